#include "capra/ext_real.hpp"

#include <cmath>
#include <cstdio>

#include "capra/errors.hpp"

namespace capra {

ExtReal::ExtReal(double value) : value_(value) {
  if (!std::isfinite(value)) {
    throw InvalidArgument("ExtReal: finite constructor given a non-finite value");
  }
}

ExtReal ExtReal::from_double(double value) {
  if (std::isnan(value)) throw InvalidArgument("ExtReal: NaN is not an extended real");
  if (value == INFINITY) return plus_infinity();
  if (value == -INFINITY) return minus_infinity();
  return ExtReal(value);
}

double ExtReal::value() const {
  if (!is_finite()) throw InvalidArgument("ExtReal::value on an infinite value");
  return value_;
}

double ExtReal::to_double() const {
  switch (kind_) {
    case Kind::kPlusInf:
      return INFINITY;
    case Kind::kMinusInf:
      return -INFINITY;
    case Kind::kFinite:
      break;
  }
  return value_;
}

ExtReal ExtReal::operator-() const {
  switch (kind_) {
    case Kind::kPlusInf:
      return minus_infinity();
    case Kind::kMinusInf:
      return plus_infinity();
    case Kind::kFinite:
      break;
  }
  return ExtReal(-value_);
}

ExtReal ExtReal::scaled_by(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("ExtReal::scaled_by requires a finite positive factor");
  }
  return is_finite() ? ExtReal(lambda * value_) : *this;
}

std::string ExtReal::to_string() const {
  if (is_plus_infinity()) return "inf";
  if (is_minus_infinity()) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
  if (a.kind_ == b.kind_) {
    return a.is_finite() ? a.value_ <=> b.value_ : std::partial_ordering::equivalent;
  }
  if (a.is_minus_infinity() || b.is_plus_infinity()) return std::partial_ordering::less;
  return std::partial_ordering::greater;
}

bool operator==(const ExtReal& a, const ExtReal& b) {
  return (a <=> b) == std::partial_ordering::equivalent;
}

ExtReal lower_add(const ExtReal& a, const ExtReal& b) {
  if (a.is_minus_infinity() || b.is_minus_infinity()) return ExtReal::minus_infinity();
  if (a.is_plus_infinity() || b.is_plus_infinity()) return ExtReal::plus_infinity();
  return ExtReal::from_double(a.value() + b.value());  // overflow saturates
}

ExtReal upper_add(const ExtReal& a, const ExtReal& b) {
  if (a.is_plus_infinity() || b.is_plus_infinity()) return ExtReal::plus_infinity();
  if (a.is_minus_infinity() || b.is_minus_infinity()) return ExtReal::minus_infinity();
  return ExtReal::from_double(a.value() + b.value());  // overflow saturates
}

const ExtReal& max(const ExtReal& a, const ExtReal& b) { return (a < b) ? b : a; }
const ExtReal& min(const ExtReal& a, const ExtReal& b) { return (b < a) ? b : a; }

}  // namespace capra
