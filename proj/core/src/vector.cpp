#include "capra/vector.hpp"

#include <cmath>
#include <string>

#include "capra/errors.hpp"

namespace capra {

void require_same_dim(VectorView a, VectorView b, std::string_view what) {
  if (a.size() != b.size()) {
    throw DimensionMismatch(std::string(what) + ": dimension mismatch (" +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
  }
}

void require_finite(VectorView x, std::string_view what) {
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw InvalidArgument(std::string(what) + ": entries must be finite");
    }
  }
}

double dot(VectorView a, VectorView b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(VectorView x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

bool is_zero(VectorView x) {
  for (double v : x) {
    if (v != 0.0) return false;
  }
  return true;
}

Vector scaled(VectorView x, double factor) {
  Vector out(x.begin(), x.end());
  for (double& v : out) v *= factor;
  return out;
}

Vector add(VectorView a, VectorView b) {
  require_same_dim(a, b, "add");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector subtract(VectorView a, VectorView b) {
  require_same_dim(a, b, "subtract");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace capra
