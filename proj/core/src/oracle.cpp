#include "capra/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "capra/errors.hpp"
#include "capra/linear_program.hpp"

namespace capra {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

void GridSpec::validate() const {
  if (!(lo < hi)) throw InvalidArgument("GridSpec: need lo < hi");
  if (!(step > 0.0)) throw InvalidArgument("GridSpec: need step > 0");
  if (dim < 1 || dim > 3) throw InvalidArgument("GridSpec: dim must lie in 1..3");
  const double per_axis = std::floor((hi - lo) / step + 1e-9) + 1.0;
  if (std::pow(per_axis, double(dim)) > 1e7) throw InvalidArgument("GridSpec: more than 1e7 points");
}

std::size_t GridSpec::points_per_axis() const {
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < dim; ++i) n *= points_per_axis();
  return n;
}

Vector GridSpec::point(std::size_t index) const {
  const std::size_t n = points_per_axis();
  Vector p(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    p[i] = lo + step * double(index % n);
    index /= n;
  }
  return p;
}

SampledFunction sample_on_grid(const GridSpec& grid, const std::function<double(VectorView)>& f) {
  grid.validate();
  SampledFunction s;
  s.dim = grid.dim;
  const std::size_t n = grid.size();
  s.points.reserve(n);
  s.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.points.push_back(grid.point(i));
    s.values.push_back(f(s.points.back()));
  }
  return s;
}

double dual_norm_by_subsets(VectorView y, std::size_t k, const SourceNorm& src) {
  const std::size_t d = y.size();
  if (d > 20) throw InvalidArgument("dual_norm_by_subsets: d > 20");
  if (k > d) throw InvalidArgument("dual_norm_by_subsets: k outside 0..d");
  double best = 0.0;
  Vector restricted(d);
  for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > k) continue;
    for (std::size_t i = 0; i < d; ++i) restricted[i] = (mask >> i) & 1u ? y[i] : 0.0;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < d; ++i) {
      if ((mask >> i) & 1u) idx.push_back(i);
    }
    best = std::max(best, k_star_norm(restricted, SupportSet(d, idx), src));
  }
  return best;
}

double legendre_at(const SampledFunction& f, VectorView y) {
  if (y.size() != f.dim) throw DimensionMismatch("legendre_at: dimension mismatch");
  double best = -kInf;
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    if (f.values[i] == kInf) continue;
    best = std::max(best, dot(f.points[i], y) - f.values[i]);
  }
  return best;
}

SampledFunction legendre_on_grid(const SampledFunction& f, const GridSpec& dual_grid) {
  if (f.dim > 2) throw InvalidArgument("legendre_on_grid: dim > 2");
  dual_grid.validate();
  if (dual_grid.dim != f.dim) throw DimensionMismatch("legendre_on_grid: grid dimension mismatch");
  std::vector<std::size_t> finite;
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    if (f.values[i] != kInf) finite.push_back(i);
  }
  SampledFunction out;
  out.dim = f.dim;
  const std::size_t n = dual_grid.size();
  out.points.reserve(n);
  out.values.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector y = dual_grid.point(j);
    double best = -kInf;
    for (std::size_t i : finite) best = std::max(best, dot(f.points[i], y) - f.values[i]);
    out.points.push_back(std::move(y));
    out.values.push_back(best);
  }
  return out;
}

Bracket gauge_by_sampled_atoms(VectorView x, std::size_t k, const SourceNorm& src,
                               std::size_t n_atoms, std::uint64_t seed) {
  const std::size_t d = x.size();
  if (d == 0 || d > 4) throw InvalidArgument("gauge_by_sampled_atoms: need 1 <= d <= 4");
  if (k < 1 || k > d) throw InvalidArgument("gauge_by_sampled_atoms: k outside 1..d");
  if (n_atoms > 100000) throw InvalidArgument("gauge_by_sampled_atoms: n_atoms > 1e5");
  require_finite(x, "gauge_by_sampled_atoms");
  if (is_zero(x)) return {};

  ColumnLp lp(d, Vector(x.begin(), x.end()));
  auto add_pair = [&](const Vector& atom) {
    lp.add_column(atom, 1.0);
    lp.add_column(scaled(atom, -1.0), 1.0);
  };
  std::vector<std::size_t> basis(d);
  for (std::size_t i = 0; i < d; ++i) {
    Vector e(d, 0.0);
    e[i] = 1.0;
    basis[i] = lp.columns() + (x[i] >= 0.0 ? 0 : 1);
    add_pair(e);
  }
  // x restricted to its k largest entries, normalized.
  {
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(x[a]) > std::abs(x[b]); });
    Vector atom(d, 0.0);
    for (std::size_t j = 0; j < k; ++j) atom[idx[j]] = x[idx[j]];
    add_pair(scaled(atom, 1.0 / lp_norm(atom, src.p())));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<std::size_t> perm(d);
  for (std::size_t a = 0; a < n_atoms; ++a) {
    for (std::size_t i = 0; i < d; ++i) perm[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, d - 1);
      std::swap(perm[i], perm[pick(rng)]);
    }
    Vector atom(d, 0.0);
    for (std::size_t i = 0; i < k; ++i) atom[perm[i]] = gauss(rng);
    const double n = lp_norm(atom, src.p());
    if (n == 0.0) continue;
    add_pair(scaled(atom, 1.0 / n));
  }
  lp.set_basis(basis);
  if (lp.solve() != ColumnLp::Status::kOptimal) {
    throw ConvergenceError("gauge_by_sampled_atoms: LP failed", kInf);
  }
  Bracket b;
  b.upper = lp.objective();
  const Vector& y = lp.duals();
  const double dn = dual_norm_by_subsets(y, k, src);
  b.lower = dn > 0.0 ? std::min(dot(x, y) / dn, b.upper) : 0.0;
  return b;
}

}  // namespace capra
