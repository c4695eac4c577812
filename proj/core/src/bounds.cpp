#include "capra/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "capra/errors.hpp"
#include "capra/l0.hpp"

namespace capra {

void require_phi_norm_weights(const PhiSpec& phi) {
  if (phi.dim() == 0) throw InvalidArgument("phi norm: need d >= 1");
  if (!(phi(0) == ExtReal(0.0))) throw InvalidArgument("phi norm: need phi(0) = 0");
  for (std::size_t l = 1; l <= phi.dim(); ++l) {
    if (!phi(l).is_finite() || phi(l).value() <= 0.0) {
      throw InvalidArgument("phi norm: need 0 < phi(l) < inf for l >= 1 (l=" + std::to_string(l) +
                            ")");
    }
  }
}

namespace {

void require_dim(const PhiSpec& phi, std::size_t d, const char* what) {
  if (phi.dim() != d) throw DimensionMismatch(std::string(what) + ": phi must have d+1 entries");
}

std::size_t dual_phi_argmax(VectorView y, const PhiSpec& phi, const SourceNorm& src,
                            double* value) {
  std::size_t at = 1;
  double best = -1.0;
  for (std::size_t l = 1; l <= phi.dim(); ++l) {
    const double v = dual_coordinate_norm(y, l, src) / phi(l).value();
    if (v > best) {
      best = v;
      at = l;
    }
  }
  if (value) *value = best;
  return at;
}

}  // namespace

double dual_phi_norm(VectorView y, const PhiSpec& phi, const SourceNorm& src) {
  require_dim(phi, y.size(), "dual_phi_norm");
  require_phi_norm_weights(phi);
  double v = 0.0;
  dual_phi_argmax(y, phi, src, &v);
  return v;
}

DualPhiGauge::DualPhiGauge(PhiSpec phi, SourceNorm src) : phi_(std::move(phi)), src_(src) {
  require_phi_norm_weights(phi_);
}

Vector DualPhiGauge::subgradient(VectorView y) const {
  const std::size_t l = dual_phi_argmax(y, phi_, src_, nullptr);
  return scaled(dual_coordinate_subgradient(y, l, src_), 1.0 / phi_(l).value());
}

NormEvaluation phi_norm_eval(VectorView x, const PhiSpec& phi, const SourceNorm& src,
                             const SolverConfig& cfg) {
  require_dim(phi, x.size(), "phi_norm");
  const SupportResult r = support_function_over_ball(x, DualPhiGauge(phi, src), cfg);
  NormEvaluation out;
  out.value = r.value;
  out.dual_point = r.argmax;
  out.gap = std::max(0.0, r.upper - r.value);
  return out;
}

double phi_norm(VectorView x, const PhiSpec& phi, const SourceNorm& src, const SolverConfig& cfg) {
  return phi_norm_eval(x, phi, src, cfg).value;
}

double phi_norm_inf_convolution(VectorView x, const PhiSpec& phi, const SourceNorm& src,
                                const SolverConfig& cfg) {
  require_dim(phi, x.size(), "phi_norm_inf_convolution");
  require_phi_norm_weights(phi);
  if (is_zero(x)) return 0.0;
  const std::size_t d = x.size();
  std::vector<CoordinateNormGauge> norms;
  norms.reserve(d);
  for (std::size_t l = 1; l <= d; ++l) norms.emplace_back(l, src, cfg);
  DecompositionProblem pb;
  pb.x.assign(x.begin(), x.end());
  double smallest = phi(1).value();
  for (std::size_t l = 1; l <= d; ++l) {
    pb.weights.push_back(phi(l).value());
    pb.norms.push_back(&norms[l - 1]);
    smallest = std::min(smallest, phi(l).value());
  }
  // Any block of an optimal split has phi(l) |z_l|_inf <= phi(l) N_l(z_l) <= start value.
  pb.start_block = d - 1;
  pb.box_radius = phi(d).value() * source_norm(x, src) / smallest;
  return decomposition_min(pb, cfg).value;
}

BoundReport l0_lower_bound(VectorView x, const PhiSpec& phi, const SourceNorm& src,
                           const SolverConfig& cfg) {
  require_dim(phi, x.size(), "l0_lower_bound");
  if (is_zero(x)) throw InvalidArgument("l0_lower_bound: x must be nonzero");
  BoundReport r;
  r.phi_norm_value = phi_norm(x, phi, src, cfg);
  r.source_norm_value = source_norm(x, src);
  r.ratio = r.phi_norm_value / r.source_norm_value;
  r.l0 = l0(x);
  r.phi_at_l0 = phi(r.l0).value();
  r.slack = r.phi_at_l0 - r.ratio;
  if (phi.is_strictly_increasing()) {
    std::size_t l = 1;
    while (l < phi.dim() && phi(l).value() < r.ratio - 1e-9) ++l;
    r.integer_bound = l;
  }
  return r;
}

double holder_ratio_bound(VectorView x, const SourceNorm& src) {
  if (src.p() == 1.0) throw InvalidArgument("holder_ratio_bound: p = 1 gives a trivial bound");
  if (is_zero(x)) throw InvalidArgument("holder_ratio_bound: x must be nonzero");
  const double ratio = lp_norm(x, 1.0) / source_norm(x, src);
  return std::pow(ratio, src.q());
}

}  // namespace capra
