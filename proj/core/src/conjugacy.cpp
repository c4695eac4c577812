#include "capra/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "capra/errors.hpp"
#include "capra/l0.hpp"
#include "capra/oracle.hpp"

namespace capra {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_phi_dim(const PhiSpec& phi, std::size_t d, const char* what) {
  if (phi.dim() != d) {
    throw DimensionMismatch(std::string(what) + ": phi has " + std::to_string(phi.dim() + 1) +
                            " entries, expected d+1 = " + std::to_string(d + 1));
  }
}

std::vector<ExtReal> conjugate_terms(const PhiSpec& phi, VectorView y, const SourceNorm& src) {
  std::vector<ExtReal> terms;
  terms.reserve(phi.dim() + 1);
  for (std::size_t l = 0; l <= phi.dim(); ++l) {
    terms.push_back(lower_add(ExtReal(dual_coordinate_norm(y, l, src)), -phi(l)));
  }
  return terms;
}

std::vector<std::size_t> attaining(const std::vector<ExtReal>& terms, double tol) {
  ExtReal top = ExtReal::minus_infinity();
  for (const ExtReal& t : terms) top = max(top, t);
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < terms.size(); ++l) {
    const bool hit = top.is_finite()
                         ? terms[l].is_finite() &&
                               terms[l].value() >= top.value() - tol * (1.0 + std::abs(top.value()))
                         : terms[l] == top;
    if (hit) out.push_back(l);
  }
  return out;
}

}  // namespace

PhiSpec::PhiSpec(std::vector<ExtReal> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidArgument("PhiSpec: needs at least phi(0)");
  for (const ExtReal& v : values_) {
    if (!v.is_finite()) is_finite_ = false;
    if (!v.is_finite() || v.value() < 0.0) is_nonneg_zero_at_zero_ = false;
  }
  if (!(values_[0] == ExtReal(0.0))) is_nonneg_zero_at_zero_ = false;
}

PhiSpec PhiSpec::identity(std::size_t d) {
  std::vector<ExtReal> v;
  for (std::size_t l = 0; l <= d; ++l) v.emplace_back(double(l));
  return PhiSpec(std::move(v));
}

PhiSpec PhiSpec::levelset(std::size_t d, std::size_t k) {
  if (k > d) throw InvalidArgument("PhiSpec::levelset: k outside 0..d");
  std::vector<ExtReal> v;
  for (std::size_t l = 0; l <= d; ++l) v.push_back(l <= k ? ExtReal(0.0) : ExtReal::plus_infinity());
  return PhiSpec(std::move(v));
}

PhiSpec PhiSpec::power(std::size_t d, double exponent) {
  if (!std::isfinite(exponent) || exponent <= 0.0) {
    throw InvalidArgument("PhiSpec::power: exponent must be positive");
  }
  std::vector<ExtReal> v{ExtReal(0.0)};
  for (std::size_t l = 1; l <= d; ++l) v.emplace_back(std::pow(double(l), exponent));
  return PhiSpec(std::move(v));
}

bool PhiSpec::is_strictly_increasing() const {
  for (std::size_t l = 1; l < values_.size(); ++l) {
    if (!(values_[l - 1] < values_[l])) return false;
  }
  return true;
}

Vector normalize(VectorView x, const SourceNorm& src) {
  const double n = source_norm(x, src);
  if (n == 0.0) return Vector(x.size(), 0.0);
  return scaled(x, 1.0 / n);
}

double coupling(VectorView x, VectorView y, const SourceNorm& src) {
  require_same_dim(x, y, "coupling");
  const double n = source_norm(x, src);
  return n == 0.0 ? 0.0 : dot(x, y) / n;
}

ExtReal capra_conjugate(const PhiSpec& phi, VectorView y, const SourceNorm& src) {
  require_phi_dim(phi, y.size(), "capra_conjugate");
  ExtReal out = ExtReal::minus_infinity();
  for (const ExtReal& t : conjugate_terms(phi, y, src)) out = max(out, t);
  return out;
}

std::vector<std::size_t> capra_conjugate_argmax(const PhiSpec& phi, VectorView y,
                                                const SourceNorm& src, double tol) {
  require_phi_dim(phi, y.size(), "capra_conjugate_argmax");
  return attaining(conjugate_terms(phi, y, src), tol);
}

BiconjugateResult capra_biconjugate(const PhiSpec& phi, VectorView x, const SourceNorm& src,
                                    const SolverConfig& cfg, const BiconjugateOptions& opts) {
  const std::size_t d = x.size();
  require_phi_dim(phi, d, "capra_biconjugate");
  require_finite(x, "capra_biconjugate");
  BiconjugateResult out;
  out.dual_point.assign(d, 0.0);
  auto skip = [&](std::string why) {
    out.variational_skipped = true;
    out.skip_reason = std::move(why);
  };

  std::vector<std::size_t> finite;
  bool has_minus_inf = false;
  for (std::size_t l = 0; l <= d; ++l) {
    if (phi(l).is_finite()) finite.push_back(l);
    if (phi(l).is_minus_infinity()) has_minus_inf = true;
  }
  if (!phi.is_nonneg_zero_at_zero()) skip("phi is not finite, nonnegative with phi(0) = 0");

  // The conjugate is +inf everywhere, so every term of the sup is -inf.
  if (has_minus_inf) {
    out.value = ExtReal::minus_infinity();
    out.ascent_upper = -kInf;
    return out;
  }
  // The conjugate is -inf everywhere.
  if (finite.empty()) {
    out.value = ExtReal::plus_infinity();
    out.ascent_upper = kInf;
    return out;
  }
  if (is_zero(x)) {
    ExtReal lowest = ExtReal::plus_infinity();
    for (std::size_t l = 0; l <= d; ++l) lowest = min(lowest, phi(l));
    out.value = lowest;
    out.ascent_upper = lowest.to_double();
    if (!out.variational_skipped) skip("x = 0");
    return out;
  }

  const Vector u = normalize(x, src);
  // sup_y <u, y> - conj(y) is finite iff <u, .> <= top_{l*} on all of R^d,
  // i.e. the coordinate-l* norm of u is 1, with l* the last finite index.
  const std::size_t last = finite.back();
  if (last == 0 || coordinate_norm(u, last, src, cfg) > 1.0 + opts.recession_tol) {
    out.value = ExtReal::plus_infinity();
    out.ascent_upper = kInf;
    if (!out.variational_skipped) skip("biconjugate is +inf");
    return out;
  }

  const auto objective = [&](VectorView y, Vector& g) {
    double worst = -kInf;
    std::size_t at = finite.front();
    for (std::size_t l : finite) {
      const double t = dual_coordinate_norm(y, l, src) - phi(l).value();
      if (t > worst) {
        worst = t;
        at = l;
      }
    }
    const Vector s = dual_coordinate_subgradient(y, at, src);
    g.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) g[i] = u[i] - s[i];
    return dot(u, y) - worst;
  };
  const AscentResult asc = concave_ascent(objective, u, cfg);
  out.value = ExtReal(asc.value);
  out.ascent_upper = asc.upper;
  out.dual_point = asc.argmax;
  out.iterations = asc.iterations;
  out.box_limited = asc.box_limited;

  if (!opts.run_variational) {
    if (!out.variational_skipped) skip("disabled");
    return out;
  }
  if (out.variational_skipped) return out;

  // min sum_l phi(l) N_l(z_l) over sum_l z_l = u, sum_l N_l(z_l) <= 1.
  std::vector<CoordinateNormGauge> norms;
  norms.reserve(d);
  for (std::size_t l = 1; l <= d; ++l) norms.emplace_back(l, src, cfg);
  DecompositionProblem pb;
  pb.x = u;
  for (std::size_t l = 1; l <= d; ++l) {
    pb.weights.push_back(phi(l).value());
    pb.norms.push_back(&norms[l - 1]);
  }
  pb.budget = 1.0;
  pb.box_radius = 1.0;  // N_l >= ||.|| >= |.|_inf on the l_p family
  pb.start_block = l0(u) - 1;
  const DecompositionResult dec = decomposition_min(pb, cfg);
  out.variational = dec.value;
  out.gap = std::abs(dec.value - asc.value);
  return out;
}

ExtReal biconjugate_levelset_indicator(std::size_t k, VectorView x, const SourceNorm& src,
                                       double tol, const SolverConfig& cfg) {
  if (k > x.size()) {
    throw InvalidArgument("biconjugate_levelset_indicator: k=" + std::to_string(k) +
                          " outside 0.." + std::to_string(x.size()));
  }
  if (is_zero(x)) return ExtReal(0.0);
  if (k == 0) return ExtReal::plus_infinity();
  const double n = source_norm(x, src);
  const double nk = coordinate_norm(x, k, src, cfg);
  return std::abs(nk - n) <= tol * n ? ExtReal(0.0) : ExtReal::plus_infinity();
}

std::string to_string(SubdiffCase c) {
  switch (c) {
    case SubdiffCase::kAtZero: return "at_zero";
    case SubdiffCase::kNonzeroFinite: return "nonzero_finite";
    case SubdiffCase::kNonzeroInfiniteAll: return "nonzero_infinite_all";
    case SubdiffCase::kNonzeroEmpty: return "nonzero_empty";
  }
  return "unknown";
}

SubdiffCertificate subdiff_at_zero_contains(const PhiSpec& phi, VectorView y,
                                            const SourceNorm& src, double tol) {
  require_phi_dim(phi, y.size(), "subdiff_at_zero_contains");
  SubdiffCertificate cert;
  cert.case_tag = SubdiffCase::kAtZero;
  cert.tol = tol;
  for (std::size_t l = 1; l <= phi.dim(); ++l) {
    const ExtReal radius = upper_add(phi(l), -phi(0));
    if (radius.is_plus_infinity()) continue;
    if (radius.is_minus_infinity() || radius.value() < 0.0) {
      cert.residual_coupling_eq = kInf;
      continue;
    }
    const double top = dual_coordinate_norm(y, l, src);
    const double r = radius.value();
    const double violation = std::max(0.0, top - r) / (1.0 + std::abs(top) + std::abs(r));
    cert.residual_coupling_eq = std::max(cert.residual_coupling_eq, violation);
  }
  cert.member = cert.residual_coupling_eq <= tol;
  return cert;
}

SubdiffCertificate subdiff_membership(const PhiSpec& phi, VectorView x, VectorView y,
                                      const SourceNorm& src, const SubdiffOptions& opts) {
  require_same_dim(x, y, "subdiff_membership");
  require_phi_dim(phi, x.size(), "subdiff_membership");
  if (is_zero(x)) throw InvalidArgument("subdiff_membership: x = 0, use subdiff_at_zero_contains");
  SubdiffCertificate cert;
  const std::size_t l = l0(x, opts.l0_tol);
  cert.l0 = l;

  bool all_plus_inf = true;
  for (const ExtReal& v : phi.values()) all_plus_inf = all_plus_inf && v.is_plus_infinity();
  if (phi(l).is_minus_infinity() || all_plus_inf) {
    cert.case_tag = SubdiffCase::kNonzeroInfiniteAll;
    cert.member = true;
    return cert;
  }
  if (phi(l).is_plus_infinity()) {
    cert.case_tag = SubdiffCase::kNonzeroEmpty;
    cert.member = false;
    cert.residual_argmax = kInf;
    return cert;
  }

  cert.case_tag = SubdiffCase::kNonzeroFinite;
  const NormEvaluation nx = coordinate_norm_eval(x, l, src, opts.solver);
  const double tol = opts.tol ? *opts.tol : (nx.closed_form ? 1e-7 : 1e-4);
  cert.tol = tol;
  const double top = dual_coordinate_norm(y, l, src);
  const double ip = dot(x, y);
  cert.residual_coupling_eq = std::abs(ip - nx.value * top) / (1.0 + std::abs(ip) + nx.value * top);

  const std::vector<ExtReal> terms = conjugate_terms(phi, y, src);
  ExtReal top_term = ExtReal::minus_infinity();
  for (const ExtReal& t : terms) top_term = max(top_term, t);
  if (top_term.is_finite()) {
    cert.residual_argmax =
        (top_term.value() - terms[l].value()) / (1.0 + std::abs(top_term.value()));
  } else {
    cert.residual_argmax = kInf;
  }
  cert.argmax_set = attaining(terms, tol);
  cert.member = cert.residual_coupling_eq <= tol && cert.residual_argmax <= tol;
  return cert;
}

ExtReal conditional_infimum(const ScalarFunction& f, VectorView x, const SourceNorm& src,
                            bool ray_constant, double sphere_tol) {
  if (is_zero(x)) return ExtReal::from_double(f(x));
  if (std::abs(source_norm(x, src) - 1.0) > sphere_tol) return ExtReal::plus_infinity();
  if (ray_constant) return ExtReal::from_double(f(x));
  constexpr int kSteps = 1601;  // 100 per decade over 1e-8..1e8
  double best = kInf;
  for (int i = 0; i < kSteps; ++i) {
    const double lambda = std::pow(10.0, -8.0 + 16.0 * i / (kSteps - 1));
    best = std::min(best, f(scaled(x, lambda)));
  }
  return ExtReal::from_double(best);
}

std::vector<Vector> sphere_points_2d(const SourceNorm& src, std::size_t count) {
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double theta = 2.0 * std::numbers::pi * double(j) / double(count);
    Vector v{std::cos(theta), std::sin(theta)};
    for (double& c : v) {
      if (std::abs(c) < 1e-15) c = 0.0;
    }
    out.push_back(normalize(v, src));
  }
  return out;
}

ConvexityReport capra_convexity_check(const ScalarFunction& f, const SourceNorm& src,
                                      const ConvexityCheckSpec& spec) {
  std::vector<double> angles = spec.angles;
  if (angles.empty()) {
    const double pi = std::numbers::pi;
    for (int quadrant = 0; quadrant < 4; ++quadrant) {
      for (int j = 0; j < 4; ++j) angles.push_back(pi / 8 + j * (pi / 4) / 3 + quadrant * pi / 2);
    }
  }

  // The conjugate only sees f through its conditional infimum: values on the sphere and at 0.
  SampledFunction g;
  g.dim = 2;
  for (const Vector& u : sphere_points_2d(src, spec.sphere_points)) {
    g.points.push_back(u);
    g.values.push_back(conditional_infimum(f, u, src, spec.ray_constant).to_double());
  }
  g.points.push_back(Vector{0.0, 0.0});
  g.values.push_back(f(Vector{0.0, 0.0}));
  SampledFunction conj =
      legendre_on_grid(g, GridSpec{-spec.half_width, spec.half_width, spec.step, 2});
  if (spec.ray_constant) {
    // Also try the sphere point aligned with each y; exact when f is constant on the sphere.
    const double q = src.q();
    for (std::size_t i = 0; i < conj.points.size(); ++i) {
      const Vector& y = conj.points[i];
      if (is_zero(y)) continue;
      const Vector u = lp_norming_point(y, q);
      const double fu = f(u);
      if (std::isfinite(fu)) conj.values[i] = std::max(conj.values[i], dot(u, y) - fu);
    }
  }

  ConvexityReport report;
  for (double theta : angles) {
    const Vector u = normalize(Vector{std::cos(theta), std::sin(theta)}, src);
    const double value = f(u);
    const double recon = legendre_at(conj, u);
    const double residual = std::abs(value - recon);
    if (residual > report.max_residual || report.worst_point.empty()) {
      report.max_residual = std::max(report.max_residual, residual);
      report.worst_point = u;
    }
    report.points.push_back(u);
    report.values.push_back(value);
    report.reconstructions.push_back(recon);
  }
  return report;
}

}  // namespace capra
