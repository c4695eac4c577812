#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "capra/ext_real.hpp"
#include "capra/norms.hpp"
#include "capra/solver.hpp"
#include "capra/vector.hpp"

namespace capra {

/// A function on {0..d} given by its table phi(0), ..., phi(d).
class PhiSpec {
 public:
  explicit PhiSpec(std::vector<ExtReal> values);

  /// phi(l) = l, i.e. phi o l0 = l0.
  static PhiSpec identity(std::size_t d);
  /// phi = 0 on {0..k}, +inf beyond: the indicator of {l0 <= k}.
  static PhiSpec levelset(std::size_t d, std::size_t k);
  /// phi(l) = l^exponent for l >= 1, phi(0) = 0.
  static PhiSpec power(std::size_t d, double exponent);
  static PhiSpec sqrt(std::size_t d) { return power(d, 0.5); }

  std::size_t dim() const { return values_.size() - 1; }
  const ExtReal& operator()(std::size_t l) const { return values_.at(l); }
  const std::vector<ExtReal>& values() const { return values_; }

  bool is_finite() const { return is_finite_; }
  /// phi(0) = 0 and every phi(l) finite and >= 0.
  bool is_nonneg_zero_at_zero() const { return is_nonneg_zero_at_zero_; }
  bool is_strictly_increasing() const;

 private:
  std::vector<ExtReal> values_;
  bool is_finite_ = true;
  bool is_nonneg_zero_at_zero_ = true;
};

/// x / ||x|| for x != 0, and 0 for x = 0.
Vector normalize(VectorView x, const SourceNorm& src);
/// <x, y> / ||x|| for x != 0, and 0 for x = 0.
double coupling(VectorView x, VectorView y, const SourceNorm& src);

/// sup_l [ dual_coordinate_norm(y, l) lower-plus (-phi(l)) ].
ExtReal capra_conjugate(const PhiSpec& phi, VectorView y, const SourceNorm& src);
/// Indices l attaining the conjugate sup within tol (relative to 1 + |value|).
std::vector<std::size_t> capra_conjugate_argmax(const PhiSpec& phi, VectorView y,
                                                const SourceNorm& src, double tol = 1e-9);

struct BiconjugateResult {
  ExtReal value;                      // ascent route (or exact for the special cases)
  double ascent_upper = 0.0;          // cutting-plane bound on the ascent sup
  Vector dual_point;                  // maximizer of the ascent objective
  std::optional<double> variational;  // decomposition route
  std::optional<double> gap;          // |ascent - variational|
  bool variational_skipped = false;
  std::string skip_reason;
  std::size_t iterations = 0;
  bool box_limited = false;
};

struct BiconjugateOptions {
  bool run_variational = true;
  /// Relative slack in the recession test N_l*(n(x)) <= 1.
  double recession_tol = 1e-9;
};

BiconjugateResult capra_biconjugate(const PhiSpec& phi, VectorView x, const SourceNorm& src,
                                    const SolverConfig& cfg = {},
                                    const BiconjugateOptions& opts = {});

/// Biconjugate of the indicator of {l0 <= k}: 0 where N_k(x) = ||x|| (relative tol), +inf elsewhere.
ExtReal biconjugate_levelset_indicator(std::size_t k, VectorView x, const SourceNorm& src,
                                       double tol = 1e-7, const SolverConfig& cfg = {});

enum class SubdiffCase { kAtZero, kNonzeroFinite, kNonzeroInfiniteAll, kNonzeroEmpty };
std::string to_string(SubdiffCase c);

struct SubdiffCertificate {
  bool member = false;
  SubdiffCase case_tag = SubdiffCase::kAtZero;
  /// l attaining max_j [ dual_coordinate_norm(y, j) - phi(j) ] within tol.
  std::vector<std::size_t> argmax_set;
  /// Normal-cone equality residual (nonzero x) or the largest ball violation (x = 0).
  double residual_coupling_eq = 0.0;
  /// max_j [..] minus the value at l = l0(x).
  double residual_argmax = 0.0;
  std::size_t l0 = 0;
  double tol = 0.0;
};

SubdiffCertificate subdiff_at_zero_contains(const PhiSpec& phi, VectorView y,
                                            const SourceNorm& src, double tol = 1e-7);

struct SubdiffOptions {
  /// Relative tolerance; defaults to 1e-7 on closed-form norms, 1e-4 on solver norms.
  std::optional<double> tol;
  /// Threshold used for l0(x).
  double l0_tol = 0.0;
  SolverConfig solver;
};

SubdiffCertificate subdiff_membership(const PhiSpec& phi, VectorView x, VectorView y,
                                      const SourceNorm& src, const SubdiffOptions& opts = {});

using ScalarFunction = std::function<double(VectorView)>;

/// inf_{lambda > 0} f(lambda x) for x on the unit sphere (f(0) at 0, +inf elsewhere).
/// Ray-constant f is evaluated once; otherwise lambda runs over a log grid 1e-8..1e8.
ExtReal conditional_infimum(const ScalarFunction& f, VectorView x, const SourceNorm& src,
                            bool ray_constant = false, double sphere_tol = 1e-9);

struct ConvexityCheckSpec {
  /// Sample angles; empty picks 16 angles in [pi/8, 3pi/8] + j pi/2.
  std::vector<double> angles;
  /// Dual grid [-half_width, half_width]^2.
  double half_width = 16.0;
  double step = 0.1;
  /// Sphere points used for the conjugate.
  std::size_t sphere_points = 2000;
  bool ray_constant = true;
};

struct ConvexityReport {
  double max_residual = 0.0;
  Vector worst_point;
  std::vector<Vector> points;
  std::vector<double> values;           // f at the sample points
  std::vector<double> reconstructions;  // grid biconjugate at the sample points
};

/// Fixed-point test f = f^cc on sample points of the plane (d = 2).
ConvexityReport capra_convexity_check(const ScalarFunction& f, const SourceNorm& src,
                                      const ConvexityCheckSpec& spec = {});

/// Points of the unit sphere of the source norm in the plane, axis points exact.
std::vector<Vector> sphere_points_2d(const SourceNorm& src, std::size_t count);

}  // namespace capra
