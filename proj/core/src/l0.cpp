#include "capra/l0.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "capra/errors.hpp"

namespace capra {
namespace {

void require_tol(double tol) {
  if (!(tol >= 0.0)) throw InvalidArgument("l0: tolerance must be nonnegative");
}

}  // namespace

SupportSet::SupportSet(std::size_t dim, std::vector<std::size_t> indices)
    : dim_(dim), indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] >= dim_) {
      throw InvalidArgument("SupportSet: index " + std::to_string(indices_[i] + 1) +
                            " outside 1.." + std::to_string(dim_));
    }
    if (i > 0 && indices_[i] <= indices_[i - 1]) {
      throw InvalidArgument("SupportSet: indices must be strictly increasing");
    }
  }
}

SupportSet SupportSet::from_one_based(std::size_t dim, const std::vector<std::size_t>& indices) {
  std::vector<std::size_t> zero_based;
  zero_based.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i == 0) throw InvalidArgument("SupportSet: indices are 1-based");
    zero_based.push_back(i - 1);
  }
  return SupportSet(dim, std::move(zero_based));
}

SupportSet SupportSet::full(std::size_t dim) {
  std::vector<std::size_t> all(dim);
  for (std::size_t i = 0; i < dim; ++i) all[i] = i;
  return SupportSet(dim, std::move(all));
}

std::vector<std::size_t> SupportSet::one_based() const {
  std::vector<std::size_t> out(indices_);
  for (std::size_t& i : out) ++i;
  return out;
}

bool SupportSet::contains(std::size_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

std::size_t l0(VectorView x, double tol) {
  require_tol(tol);
  return static_cast<std::size_t>(
      std::count_if(x.begin(), x.end(), [tol](double v) { return std::abs(v) > tol; }));
}

SupportSet support(VectorView x, double tol) {
  require_tol(tol);
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (std::abs(x[j]) > tol) idx.push_back(j);
  }
  return SupportSet(x.size(), std::move(idx));
}

Vector project(VectorView x, const SupportSet& K) {
  if (K.dim() != x.size()) {
    throw DimensionMismatch("project: support set dimension " + std::to_string(K.dim()) +
                            " does not match vector dimension " + std::to_string(x.size()));
  }
  Vector out(x.size(), 0.0);
  for (std::size_t j : K.indices()) out[j] = x[j];
  return out;
}

bool supported_in(VectorView x, const SupportSet& K, double tol) {
  if (K.dim() != x.size()) throw DimensionMismatch("supported_in: dimension mismatch");
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!K.contains(j) && std::abs(x[j]) > tol) return false;
  }
  return true;
}

bool level_set_contains(VectorView x, std::size_t k, double tol) {
  if (k > x.size()) {
    throw InvalidArgument("level_set_contains: k=" + std::to_string(k) + " outside 0.." +
                          std::to_string(x.size()));
  }
  return l0(x, tol) <= k;
}

}  // namespace capra
