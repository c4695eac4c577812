#pragma once

#include "capra/vector.hpp"

namespace capra {

/// A norm-like function with a subgradient oracle.
class Gauge {
 public:
  virtual ~Gauge() = default;
  virtual double value(VectorView y) const = 0;
  /// g with <g, y> = value(y) and <g, v> <= value(v) for all v.
  virtual Vector subgradient(VectorView y) const = 0;
  /// sup of |y_i| over the unit ball when known, otherwise 0.
  virtual double coordinate_bound() const { return 0.0; }
};

}  // namespace capra
