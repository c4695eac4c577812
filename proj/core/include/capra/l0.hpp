#pragma once

#include <cstddef>
#include <vector>

#include "capra/vector.hpp"

namespace capra {

/// Subset K of the coordinates {1..d}.
///
/// Stored 0-based and strictly increasing; every external interface
/// (JSON, CLI, docs) speaks 1-based indices.
class SupportSet {
 public:
  SupportSet(std::size_t dim, std::vector<std::size_t> indices);

  static SupportSet from_one_based(std::size_t dim, const std::vector<std::size_t>& indices);
  static SupportSet full(std::size_t dim);
  static SupportSet empty(std::size_t dim) { return SupportSet(dim, {}); }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return indices_.size(); }
  const std::vector<std::size_t>& indices() const { return indices_; }
  std::vector<std::size_t> one_based() const;
  bool contains(std::size_t index) const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::size_t dim_;
  std::vector<std::size_t> indices_;
};

/// Number of entries with |x_j| > tol.
std::size_t l0(VectorView x, double tol = 0.0);

SupportSet support(VectorView x, double tol = 0.0);

/// Orthogonal projection onto the coordinate subspace of K.
Vector project(VectorView x, const SupportSet& K);

/// True when every entry outside K has magnitude <= tol.
bool supported_in(VectorView x, const SupportSet& K, double tol = 0.0);

/// Membership in the level set {l0 <= k}; k must lie in [0, d].
bool level_set_contains(VectorView x, std::size_t k, double tol = 0.0);

}  // namespace capra
