#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "capra/gauge.hpp"
#include "capra/l0.hpp"
#include "capra/solver.hpp"
#include "capra/vector.hpp"

namespace capra {

/// The l_p source norm, p in [1, +inf], with its conjugate exponent q.
class SourceNorm {
 public:
  static SourceNorm lp(double p);
  /// Accepts a decimal >= 1 or the token "inf".
  static SourceNorm parse(std::string_view text);

  double p() const { return p_; }
  double q() const { return q_; }
  bool p_is_inf() const;
  bool strictly_convex() const;
  std::string to_string() const;

  friend bool operator==(const SourceNorm&, const SourceNorm&) = default;

 private:
  SourceNorm(double p, double q) : p_(p), q_(q) {}
  double p_;
  double q_;
};

/// ||x||_p, overflow-safe; p = +inf allowed.
double lp_norm(VectorView x, double p);
/// Dual point of x for l_p: ||y||_q = 1 (or y = 0) and <x, y> = ||x||_p.
Vector lp_norming_point(VectorView x, double p);

class LpGauge final : public Gauge {
 public:
  explicit LpGauge(double p) : p_(p) {}
  double value(VectorView y) const override { return lp_norm(y, p_); }
  Vector subgradient(VectorView y) const override { return lp_norming_point(y, p_); }
  double coordinate_bound() const override { return 1.0; }

 private:
  double p_;
};

double source_norm(VectorView x, const SourceNorm& src);
double dual_norm(VectorView y, const SourceNorm& src);
/// Source norm of x, which must be supported in K.
double restriction_norm(VectorView x, const SupportSet& K, const SourceNorm& src);
/// Dual of the K-restriction norm at y, which must be supported in K.
double k_star_norm(VectorView y, const SupportSet& K, const SourceNorm& src);

/// Indices of the k largest |y_i|; ties go to the lower index.
std::vector<std::size_t> top_k_indices(VectorView y, std::size_t k);

/// Dual coordinate-k norm: l_q norm of the k largest magnitudes (0 for k = 0).
double dual_coordinate_norm(VectorView y, std::size_t k, const SourceNorm& src);
/// A subgradient of the dual coordinate-k norm at y.
Vector dual_coordinate_subgradient(VectorView y, std::size_t k, const SourceNorm& src);

struct NormEvaluation {
  double value = 0.0;
  /// y with dual_coordinate_norm(y, k) <= 1 and <x, y> = value (up to gap).
  Vector dual_point;
  bool closed_form = false;
  /// Solver bracket width; 0 for closed forms.
  double gap = 0.0;
};

/// Coordinate-k norm, k in [1, d]. Closed forms for x = 0, k = d, k = 1,
/// p = 1, p = inf and p = 2 (k-support norm); column generation otherwise.
NormEvaluation coordinate_norm_eval(VectorView x, std::size_t k, const SourceNorm& src,
                                    const SolverConfig& cfg = {});
double coordinate_norm(VectorView x, std::size_t k, const SourceNorm& src,
                       const SolverConfig& cfg = {});
/// Always takes the solver route; used to validate the closed forms.
NormEvaluation coordinate_norm_generic(VectorView x, std::size_t k, const SourceNorm& src,
                                       const SolverConfig& cfg = {});
NormEvaluation k_support_norm(VectorView x, std::size_t k);

struct NormSequence {
  /// values[k-1] = coordinate-k norm of x, k = 1..d.
  std::vector<double> values;
  /// dual_values[k-1] = dual coordinate-k norm of y, k = 1..d (empty when no y).
  std::vector<double> dual_values;
};

NormSequence norm_sequence(VectorView x, const SourceNorm& src, const SolverConfig& cfg = {});
NormSequence norm_sequence(VectorView x, VectorView y, const SourceNorm& src,
                           const SolverConfig& cfg = {});

/// min { k : |N_k(x) - N_d(x)| <= tol * N_d(x) }; throws for x = 0.
std::size_t sparsity_from_grading(VectorView x, const SourceNorm& src, double tol = 1e-6,
                                  const SolverConfig& cfg = {});

/// Dual coordinate-k norm as a Gauge.
class TopKGauge final : public Gauge {
 public:
  TopKGauge(std::size_t k, SourceNorm src) : k_(k), src_(src) {}
  double value(VectorView y) const override { return dual_coordinate_norm(y, k_, src_); }
  Vector subgradient(VectorView y) const override {
    return dual_coordinate_subgradient(y, k_, src_);
  }
  double coordinate_bound() const override { return k_ == 0 ? 0.0 : 1.0; }

 private:
  std::size_t k_;
  SourceNorm src_;
};

/// Coordinate-k norm as a Gauge; the subgradient is the dual point.
class CoordinateNormGauge final : public Gauge {
 public:
  CoordinateNormGauge(std::size_t k, SourceNorm src, SolverConfig cfg = {})
      : k_(k), src_(src), cfg_(cfg) {}
  double value(VectorView x) const override { return coordinate_norm(x, k_, src_, cfg_); }
  Vector subgradient(VectorView x) const override {
    return coordinate_norm_eval(x, k_, src_, cfg_).dual_point;
  }

 private:
  std::size_t k_;
  SourceNorm src_;
  SolverConfig cfg_;
};

}  // namespace capra
