#pragma once

#include <cstddef>
#include <vector>

#include "capra/vector.hpp"

namespace capra {

/// Column-oriented revised simplex for  min c'l  s.t.  A l = b, l >= 0.
///
/// Built for cutting-plane loops: few rows, columns appended over time,
/// costs edited in place, and warm starts from the previous basis. The
/// caller supplies a primal-feasible starting basis. The row multipliers z
/// (B' z = c_B) at optimality are the point of the dual program
/// max b'z  s.t.  A'z <= c, which is where cutting-plane iterates come from.
class ColumnLp {
 public:
  enum class Status { kOptimal, kUnbounded, kPivotLimit, kSingular };

  ColumnLp(std::size_t rows, Vector rhs);

  std::size_t rows() const { return rows_; }
  std::size_t columns() const { return costs_.size(); }

  std::size_t add_column(Vector column, double cost);
  void set_cost(std::size_t j, double cost);
  double cost(std::size_t j) const { return costs_[j]; }
  const Vector& column(std::size_t j) const { return columns_[j]; }

  /// Starting basis; must contain `rows()` distinct columns and give x_B >= 0.
  void set_basis(std::vector<std::size_t> basis);
  const std::vector<std::size_t>& basis() const { return basis_; }

  Status solve(std::size_t max_pivots = 100000);

  double objective() const { return objective_; }
  /// Row multipliers z of the last solve.
  const Vector& duals() const { return duals_; }
  /// Value of column j in the last basic solution (0 when nonbasic).
  double primal(std::size_t j) const;
  std::size_t pivots() const { return pivots_; }

 private:
  bool refresh();

  std::size_t rows_;
  Vector rhs_;
  std::vector<Vector> columns_;
  Vector costs_;
  std::vector<std::size_t> basis_;
  std::vector<int> position_;  // basis slot of each column, -1 when nonbasic
  Vector basic_values_;
  Vector duals_;
  double objective_ = 0.0;
  std::size_t pivots_ = 0;
};

}  // namespace capra
