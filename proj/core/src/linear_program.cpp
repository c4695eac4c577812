#include "capra/linear_program.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "capra/errors.hpp"

namespace capra {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kPricingTol = 1e-11;
// After this many consecutive zero-length pivots switch to Bland's rule.
constexpr std::size_t kDegenerateStreak = 50;

}  // namespace

ColumnLp::ColumnLp(std::size_t rows, Vector rhs) : rows_(rows), rhs_(std::move(rhs)) {
  if (rows_ == 0) throw InvalidArgument("ColumnLp: need at least one row");
  if (rhs_.size() != rows_) throw DimensionMismatch("ColumnLp: rhs size differs from row count");
}

std::size_t ColumnLp::add_column(Vector column, double cost) {
  if (column.size() != rows_) throw DimensionMismatch("ColumnLp: column size differs from row count");
  columns_.push_back(std::move(column));
  costs_.push_back(cost);
  position_.push_back(-1);
  return columns_.size() - 1;
}

void ColumnLp::set_cost(std::size_t j, double cost) { costs_.at(j) = cost; }

void ColumnLp::set_basis(std::vector<std::size_t> basis) {
  if (basis.size() != rows_) throw InvalidArgument("ColumnLp: basis size differs from row count");
  std::fill(position_.begin(), position_.end(), -1);
  for (std::size_t s = 0; s < basis.size(); ++s) {
    if (basis[s] >= columns_.size() || position_[basis[s]] != -1) {
      throw InvalidArgument("ColumnLp: invalid basis column");
    }
    position_[basis[s]] = static_cast<int>(s);
  }
  basis_ = std::move(basis);
}

double ColumnLp::primal(std::size_t j) const {
  const int s = position_.at(j);
  return s < 0 ? 0.0 : basic_values_[static_cast<std::size_t>(s)];
}

bool ColumnLp::refresh() {
  const auto m = static_cast<Eigen::Index>(rows_);
  Eigen::MatrixXd B(m, m);
  Eigen::VectorXd cb(m);
  for (Eigen::Index s = 0; s < m; ++s) {
    const Vector& col = columns_[basis_[static_cast<std::size_t>(s)]];
    for (Eigen::Index r = 0; r < m; ++r) B(r, s) = col[static_cast<std::size_t>(r)];
    cb(s) = costs_[basis_[static_cast<std::size_t>(s)]];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
  if (!lu.isInvertible()) return false;
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs_.data(), m);
  const Eigen::VectorXd xb = lu.solve(b);
  const Eigen::VectorXd z = B.transpose().fullPivLu().solve(cb);
  basic_values_.assign(xb.data(), xb.data() + m);
  for (double& v : basic_values_) v = std::max(v, 0.0);
  duals_.assign(z.data(), z.data() + m);
  objective_ = 0.0;
  for (std::size_t s = 0; s < rows_; ++s) objective_ += costs_[basis_[s]] * basic_values_[s];
  return true;
}

ColumnLp::Status ColumnLp::solve(std::size_t max_pivots) {
  if (basis_.size() != rows_) throw InvalidArgument("ColumnLp: basis not set");
  pivots_ = 0;
  std::size_t degenerate = 0;
  const auto m = static_cast<Eigen::Index>(rows_);

  while (true) {
    if (!refresh()) return Status::kSingular;
    const bool bland = degenerate >= kDegenerateStreak;

    // Pricing.
    std::size_t entering = columns_.size();
    double best = 0.0;
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      if (position_[j] >= 0) continue;
      const Vector& a = columns_[j];
      double rc = costs_[j];
      for (std::size_t r = 0; r < rows_; ++r) rc -= a[r] * duals_[r];
      if (rc >= -kPricingTol * (1.0 + std::abs(costs_[j]))) continue;
      if (bland) {
        entering = j;
        break;
      }
      if (rc < best) {
        best = rc;
        entering = j;
      }
    }
    if (entering == columns_.size()) return Status::kOptimal;
    if (pivots_ >= max_pivots) return Status::kPivotLimit;

    // Direction d = B^-1 a_q.
    Eigen::MatrixXd B(m, m);
    for (Eigen::Index s = 0; s < m; ++s) {
      const Vector& col = columns_[basis_[static_cast<std::size_t>(s)]];
      for (Eigen::Index r = 0; r < m; ++r) B(r, s) = col[static_cast<std::size_t>(r)];
    }
    const Eigen::VectorXd aq = Eigen::Map<const Eigen::VectorXd>(columns_[entering].data(), m);
    const Eigen::VectorXd d = B.fullPivLu().solve(aq);

    // Ratio test; among ties prefer the larger pivot (or the lowest index under Bland).
    std::size_t leave = rows_;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < rows_; ++s) {
      const double ds = d(static_cast<Eigen::Index>(s));
      if (ds <= kPivotTol) continue;
      const double t = basic_values_[s] / ds;
      if (leave == rows_ || t < ratio - 1e-12) {
        leave = s;
        ratio = t;
      } else if (t <= ratio + 1e-12) {
        const bool take = bland ? basis_[s] < basis_[leave]
                                : ds > d(static_cast<Eigen::Index>(leave));
        if (take) {
          leave = s;
          ratio = std::min(ratio, t);
        }
      }
    }
    if (leave == rows_) return Status::kUnbounded;

    degenerate = ratio <= 1e-14 ? degenerate + 1 : 0;
    position_[basis_[leave]] = -1;
    basis_[leave] = entering;
    position_[entering] = static_cast<int>(leave);
    ++pivots_;
  }
}

}  // namespace capra
