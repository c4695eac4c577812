#pragma once

#include <cstddef>
#include <optional>

#include "capra/conjugacy.hpp"
#include "capra/norms.hpp"
#include "capra/solver.hpp"
#include "capra/vector.hpp"

namespace capra {

/// Throws InvalidArgument unless phi(0) = 0 and 0 < phi(l) < +inf for l >= 1.
void require_phi_norm_weights(const PhiSpec& phi);

/// max_{l=1..d} dual_coordinate_norm(y, l) / phi(l).
double dual_phi_norm(VectorView y, const PhiSpec& phi, const SourceNorm& src);

/// Support function of the unit ball of dual_phi_norm.
NormEvaluation phi_norm_eval(VectorView x, const PhiSpec& phi, const SourceNorm& src,
                             const SolverConfig& cfg = {});
double phi_norm(VectorView x, const PhiSpec& phi, const SourceNorm& src,
                const SolverConfig& cfg = {});
/// Same value through inf { sum_l phi(l) N_l(z_l) : sum_l z_l = x }.
double phi_norm_inf_convolution(VectorView x, const PhiSpec& phi, const SourceNorm& src,
                                const SolverConfig& cfg = {});

struct BoundReport {
  double phi_norm_value = 0.0;
  double source_norm_value = 0.0;
  double ratio = 0.0;  // phi_norm_value / source_norm_value
  double phi_at_l0 = 0.0;
  double slack = 0.0;  // phi_at_l0 - ratio
  std::size_t l0 = 0;
  /// Smallest l with phi(l) >= ratio - 1e-9; reported when phi is strictly increasing.
  std::optional<std::size_t> integer_bound;
};

BoundReport l0_lower_bound(VectorView x, const PhiSpec& phi, const SourceNorm& src,
                           const SolverConfig& cfg = {});

/// (||x||_1 / ||x||_p)^q, a lower bound on l0(x); p = 1 is rejected.
double holder_ratio_bound(VectorView x, const SourceNorm& src);

class DualPhiGauge final : public Gauge {
 public:
  DualPhiGauge(PhiSpec phi, SourceNorm src);
  double value(VectorView y) const override { return dual_phi_norm(y, phi_, src_); }
  Vector subgradient(VectorView y) const override;
  double coordinate_bound() const override { return phi_(1).value(); }

 private:
  PhiSpec phi_;
  SourceNorm src_;
};

}  // namespace capra
