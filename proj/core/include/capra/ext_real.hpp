#pragma once

#include <compare>
#include <string>

namespace capra {

/// Element of [-inf, +inf] kept as a tagged value.
///
/// IEEE arithmetic maps (+inf) + (-inf) to NaN; conjugacy calculus instead
/// needs the two Moreau additions, which resolve that sum to -inf (lower)
/// or +inf (upper). Plain `operator+` is deliberately absent.
class ExtReal {
 public:
  enum class Kind { kFinite, kPlusInf, kMinusInf };

  constexpr ExtReal() = default;
  /// Finite value; NaN and IEEE infinities are rejected (use from_double).
  explicit ExtReal(double value);

  static constexpr ExtReal plus_infinity() { return ExtReal(Kind::kPlusInf); }
  static constexpr ExtReal minus_infinity() { return ExtReal(Kind::kMinusInf); }
  /// Boundary conversion from IEEE doubles: +-inf map to the infinite kinds.
  static ExtReal from_double(double value);

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::kFinite; }
  constexpr bool is_plus_infinity() const { return kind_ == Kind::kPlusInf; }
  constexpr bool is_minus_infinity() const { return kind_ == Kind::kMinusInf; }

  /// Finite payload; throws InvalidArgument for the infinite kinds.
  double value() const;
  /// Boundary conversion to IEEE doubles (+-inf for the infinite kinds).
  double to_double() const;

  ExtReal operator-() const;

  /// lambda * a for lambda > 0; lambda = 0 is left to callers.
  ExtReal scaled_by(double lambda) const;

  std::string to_string() const;

  friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b);
  friend bool operator==(const ExtReal& a, const ExtReal& b);

 private:
  constexpr explicit ExtReal(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::kFinite;
  double value_ = 0.0;
};

/// Moreau lower addition: (+inf) + (-inf) = -inf.
ExtReal lower_add(const ExtReal& a, const ExtReal& b);
/// Moreau upper addition: (+inf) + (-inf) = +inf.
ExtReal upper_add(const ExtReal& a, const ExtReal& b);

const ExtReal& max(const ExtReal& a, const ExtReal& b);
const ExtReal& min(const ExtReal& a, const ExtReal& b);

}  // namespace capra
