#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "capra/norms.hpp"
#include "capra/vector.hpp"

namespace capra {

/// Regular grid [lo, hi]^dim with the given step (endpoints included).
struct GridSpec {
  double lo = -1.0;
  double hi = 1.0;
  double step = 0.1;
  std::size_t dim = 2;

  /// Throws unless lo < hi, step > 0, 1 <= dim <= 3 and size() <= 1e7.
  void validate() const;
  std::size_t points_per_axis() const;
  std::size_t size() const;
  Vector point(std::size_t index) const;
};

/// Function samples; +inf values mark points outside the domain.
struct SampledFunction {
  std::size_t dim = 0;
  std::vector<Vector> points;
  std::vector<double> values;
};

SampledFunction sample_on_grid(const GridSpec& grid, const std::function<double(VectorView)>& f);

/// Literal sup over |K| <= k of the K-star norm of y (d <= 20).
double dual_norm_by_subsets(VectorView y, std::size_t k, const SourceNorm& src);

/// Discrete Fenchel conjugate sup_i <x_i, y> - f(x_i) at one point.
double legendre_at(const SampledFunction& f, VectorView y);

/// Discrete Fenchel conjugate of f (dim <= 2) on every point of `dual_grid`.
/// For f L-Lipschitz on the sampled region the error at y is at most
/// mesh * (|y|_2 + L), mesh being the largest distance from a domain point
/// to its nearest sample, plus whatever lies outside the sampled region.
SampledFunction legendre_on_grid(const SampledFunction& f, const GridSpec& dual_grid);

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
  double width() const { return upper - lower; }
  bool contains(double v, double slack = 0.0) const {
    return v >= lower - slack && v <= upper + slack;
  }
};

/// Bracket on the coordinate-k norm of x (d <= 4): the upper end is the
/// cheapest combination of sampled k-sparse unit atoms that reproduces x,
/// the lower end rescales that LP's dual point by its subset-oracle norm.
Bracket gauge_by_sampled_atoms(VectorView x, std::size_t k, const SourceNorm& src,
                               std::size_t n_atoms, std::uint64_t seed);

}  // namespace capra
