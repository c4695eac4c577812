#include "capra/property_suite.hpp"

#include <algorithm>
#include <deque>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "capra/bounds.hpp"
#include "capra/conjugacy.hpp"
#include "capra/errors.hpp"
#include "capra/l0.hpp"
#include "capra/norms.hpp"
#include "capra/oracle.hpp"

namespace capra {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tally {
  std::string name;
  std::string module;
  double tol = 0.0;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double max_residual = 0.0;
  std::optional<Vector> counterexample;

  void record(double residual, VectorView witness) {
    ++trials;
    if (std::isnan(residual)) residual = kInf;
    max_residual = std::max(max_residual, residual);
    if (residual > tol) {
      ++violations;
      if (!counterexample) counterexample = Vector(witness.begin(), witness.end());
    }
  }

  Json to_json() const {
    Json j;
    j["name"] = name;
    j["module"] = module;
    j["trials"] = trials;
    j["violations"] = violations;
    j["max_residual"] = number_to_json(max_residual);
    j["tolerance"] = tol;
    j["counterexample"] = counterexample ? capra::to_json(*counterexample) : Json(nullptr);
    return j;
  }
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::size_t integer(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double gaussian() { return normal_(rng_); }
  bool coin(double p) { return uniform(0.0, 1.0) < p; }

  Vector gaussian_vector(std::size_t d) {
    Vector v(d);
    for (double& x : v) x = gaussian();
    return v;
  }
  /// Entries of magnitude in [0.5, 1.5] with random signs; each zero with probability p_zero.
  Vector sparse_vector(std::size_t d, double p_zero) {
    Vector v(d, 0.0);
    for (double& x : v) {
      if (!coin(p_zero)) x = uniform(0.5, 1.5) * (coin(0.5) ? 1.0 : -1.0);
    }
    if (is_zero(v)) v[integer(0, d - 1)] = 1.0;
    return v;
  }
  SourceNorm source(std::initializer_list<double> ps) {
    const std::vector<double> options(ps);
    return SourceNorm::lp(options[integer(0, options.size() - 1)]);
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

double rel(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(a) + std::abs(b)); }

// y in the Capra subdifferential of l0 at x: the dual point of N_l(x), l = l0(x),
// scaled until l attains the conjugate's argmax.
Vector subgradient_candidate(VectorView x, const SourceNorm& src, const PhiSpec& phi) {
  const std::size_t l = l0(x);
  const Vector y0 = coordinate_norm_eval(x, l, src).dual_point;
  const double tl = dual_coordinate_norm(y0, l, src);
  double c = 1.0;
  for (std::size_t j = 0; j < l; ++j) {
    const double gap = tl - dual_coordinate_norm(y0, j, src);
    if (gap > 1e-12) c = std::max(c, (phi(l).value() - phi(j).value()) / gap);
  }
  return scaled(y0, c * 1.01);
}

}  // namespace

Json run_property_suite(const PropertySuiteOptions& opts) {
  Sampler s(opts.seed);
  const std::size_t n = opts.trials;
  std::deque<Tally> tallies;  // stable references
  auto tally = [&](std::string name, std::string module, double tol) -> Tally& {
    Tally t;
    t.name = std::move(name);
    t.module = std::move(module);
    t.tol = tol;
    tallies.push_back(std::move(t));
    return tallies.back();
  };
  const double inf = kInf;

  {
    Tally& t = tally("extreal.moreau_additions", "extreal", 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<ExtReal> pool{ExtReal::plus_infinity(), ExtReal::minus_infinity(),
                                      ExtReal(s.gaussian()), ExtReal(s.gaussian())};
      bool ok = true;
      for (const ExtReal& a : pool) {
        for (const ExtReal& b : pool) {
          ok = ok && lower_add(a, b) == lower_add(b, a) && upper_add(a, b) == upper_add(b, a);
          ok = ok && lower_add(a, b) <= upper_add(a, b);
          if (a.is_finite() || b.is_finite()) ok = ok && lower_add(a, b) == upper_add(a, b);
          for (const ExtReal& c : pool) {
            // Finite payloads may differ in the last bit under reassociation.
            const ExtReal l1 = lower_add(lower_add(a, b), c), l2 = lower_add(a, lower_add(b, c));
            const ExtReal u1 = upper_add(upper_add(a, b), c), u2 = upper_add(a, upper_add(b, c));
            ok = ok && l1.kind() == l2.kind() && u1.kind() == u2.kind();
            if (l1.is_finite()) ok = ok && rel(l1.value(), l2.value()) < 1e-12;
            if (u1.is_finite()) ok = ok && rel(u1.value(), u2.value()) < 1e-12;
          }
        }
      }
      t.record(ok ? 0.0 : 1.0, Vector{pool[2].value(), pool[3].value()});
    }
  }

  {
    Tally& hom = tally("l0.zero_homogeneity", "l0core", 0.0);
    Tally& sub = tally("l0.subadditivity", "l0core", 0.0);
    Tally& lev = tally("l0.level_set_by_enumeration", "l0core", 0.0);
    Tally& proj = tally("l0.projection_idempotent_self_dual", "l0core", 1e-12);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t d = s.integer(1, 6);
      const Vector x = s.sparse_vector(d, 0.4);
      const Vector y = s.sparse_vector(d, 0.4);
      double worst = 0.0;
      for (double rho : {0.5, -0.5, 3.0, -3.0}) worst = std::max(worst, std::abs(double(l0(scaled(x, rho))) - double(l0(x))));
      hom.record(worst, x);
      sub.record(l0(add(x, y)) <= l0(x) + l0(y) ? 0.0 : 1.0, x);

      const std::size_t k = s.integer(0, d);
      bool by_enum = false;
      for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) > k) continue;
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < d; ++j) {
          if ((mask >> j) & 1u) idx.push_back(j);
        }
        if (project(x, SupportSet(d, idx)) == x) by_enum = true;
      }
      lev.record(by_enum == level_set_contains(x, k) ? 0.0 : 1.0, x);

      std::vector<std::size_t> idx;
      for (std::size_t j = 0; j < d; ++j) {
        if (s.coin(0.5)) idx.push_back(j);
      }
      const SupportSet K(d, idx);
      const Vector px = project(x, K);
      proj.record(std::max(rel(dot(px, y), dot(x, project(y, K))), project(px, K) == px ? 0.0 : 1.0), x);
    }
  }

  {
    Tally& dmono = tally("norms.dual_sequence_nondecreasing", "norms", 1e-12);
    Tally& pmono = tally("norms.primal_sequence_nonincreasing", "norms", 1e-9);
    Tally& pmono_solver = tally("norms.primal_sequence_nonincreasing_solver", "norms", 1e-5);
    Tally& cs = tally("norms.generalized_cauchy_schwarz", "norms", 1e-9);
    Tally& oracle = tally("norms.top_k_matches_subset_oracle", "norms", 1e-12);
    Tally& generic = tally("norms.closed_form_matches_solver", "norms", 1e-6);
    Tally& graded = tally("norms.graded_implication", "norms", 1e-7);
    Tally& strict = tally("norms.strict_grading_p2", "norms", 0.0);
    Tally& k1 = tally("norms.k1_is_l1", "norms", 1e-12);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t d = s.integer(1, 7);
      const SourceNorm src = s.source({1.0, 1.5, 2.0, 3.0, inf});
      const Vector x = s.sparse_vector(d, 0.3);
      const Vector y = s.gaussian_vector(d);
      const NormSequence seq = norm_sequence(x, y, src);

      double dv = std::abs(seq.dual_values.back() - dual_norm(y, src));
      double pv = std::abs(seq.values.back() - source_norm(x, src));
      double csv = 0.0, ov = 0.0;
      for (std::size_t k = 1; k <= d; ++k) {
        if (k < d) {
          dv = std::max(dv, seq.dual_values[k - 1] - seq.dual_values[k]);
          pv = std::max(pv, seq.values[k] - seq.values[k - 1]);
        }
        csv = std::max(csv, dot(x, y) - seq.values[k - 1] * seq.dual_values[k - 1]);
        ov = std::max(ov, std::abs(seq.dual_values[k - 1] - dual_norm_by_subsets(y, k, src)));
      }
      dmono.record(dv, y);
      const bool closed_path = src.p() == 1.0 || src.p() == 2.0 || src.p_is_inf();
      (closed_path ? pmono : pmono_solver).record(pv, x);
      cs.record(csv / (1.0 + std::abs(dot(x, y))), x);
      oracle.record(ov, y);

      const std::size_t l = l0(x);
      double gv = 0.0;
      for (std::size_t k = l; k <= d; ++k) gv = std::max(gv, rel(seq.values[k - 1], source_norm(x, src)));
      graded.record(gv, x);
      k1.record(rel(seq.values[0], lp_norm(x, 1.0)), x);

      const SourceNorm closed = s.source({2.0, inf});
      const std::size_t k = s.integer(1, d);
      generic.record(rel(coordinate_norm(x, k, closed), coordinate_norm_generic(x, k, closed).value), x);

      // Well-separated magnitudes: strict grading recovers l0 exactly for p = 2.
      Vector z(d, 0.0);
      for (std::size_t j = 0; j < d; ++j) {
        if (s.coin(0.6)) z[j] = (0.2 + 0.3 * double(j)) * (s.coin(0.5) ? 1.0 : -1.0);
      }
      if (is_zero(z)) z[0] = 1.0;
      strict.record(sparsity_from_grading(z, SourceNorm::lp(2.0)) == l0(z) ? 0.0 : 1.0, z);
    }
  }

  {
    Tally& t = tally("oracle.bracket_contains_solver_value", "oracle", 1e-7);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t d = s.integer(1, 3);
      const SourceNorm src = s.source({1.5, 2.0, 3.0, inf});
      const Vector x = s.gaussian_vector(d);
      const std::size_t k = s.integer(1, d);
      const Bracket b = gauge_by_sampled_atoms(x, k, src, 500, opts.seed + i);
      const double v = coordinate_norm(x, k, src);
      const double miss = std::max({0.0, b.lower - v, v - b.upper});
      t.record(miss / (1.0 + v), x);
    }
  }

  {
    Tally& galois = tally("capra.galois_inequality", "capra", 1e-6);
    Tally& routes = tally("capra.route_agreement", "capra", 1e-4);
    Tally& midpoint = tally("capra.conjugate_midpoint_convexity", "capra", 1e-12);
    Tally& fy = tally("capra.fenchel_young_on_members", "capra", 1e-6);
    Tally& ray = tally("capra.biconjugate_ray_constancy", "capra", 1e-6);
    Tally& table3 = tally("capra.levelset_conjugate_is_dual_norm", "capra", 1e-12);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t d = s.integer(2, 3);
      const SourceNorm src = SourceNorm::lp(2.0);
      const Vector x = s.sparse_vector(d, 0.3);
      const PhiSpec id = PhiSpec::identity(d);

      const BiconjugateResult b = capra_biconjugate(id, x, src);
      galois.record(std::max(0.0, b.value.value() - double(l0(x))), x);
      routes.record(b.variational ? rel(*b.variational, b.value.value()) : inf, x);

      BiconjugateOptions quick;
      quick.run_variational = false;
      const double rho = s.coin(0.5) ? 0.5 : 3.0;
      ray.record(rel(capra_biconjugate(id, scaled(x, rho), src, {}, quick).value.value(),
                     b.value.value()),
                 x);

      const SourceNorm any = s.source({1.0, 2.0, 3.0, inf});
      const Vector y1 = s.gaussian_vector(d), y2 = s.gaussian_vector(d);
      const Vector mid = scaled(add(y1, y2), 0.5);
      const double cm = capra_conjugate(id, mid, any).value();
      const double c1 = capra_conjugate(id, y1, any).value();
      const double c2 = capra_conjugate(id, y2, any).value();
      midpoint.record(std::max(0.0, cm - 0.5 * (c1 + c2)), y1);

      const std::size_t k = s.integer(0, d);
      table3.record(std::abs(capra_conjugate(PhiSpec::levelset(d, k), y1, any).value() -
                             dual_coordinate_norm(y1, k, any)),
                    y1);

      const Vector y = subgradient_candidate(x, src, id);
      const SubdiffCertificate cert = subdiff_membership(id, x, y, src);
      if (cert.member) {
        const double lhs = capra_conjugate(id, y, src).value();
        const double rhs = coupling(x, y, src) - double(l0(x));
        fy.record(rel(lhs, rhs), x);
      } else {
        fy.record(inf, x);
      }
    }
  }

  {
    Tally& duality = tally("bounds.phi_norm_duality", "bounds", 1e-7);
    Tally& validity = tally("bounds.lower_bound_slack", "bounds", 1e-6);
    Tally& holder = tally("bounds.holder_specialization", "bounds", 1e-6);
    Tally& trivial = tally("bounds.p1_ratio_at_most_one", "bounds", 1e-7);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t d = s.integer(1, 6);
      const SourceNorm src = s.source({2.0, 3.0, inf});
      const Vector x = s.sparse_vector(d, 0.3);
      const Vector y = s.gaussian_vector(d);
      const PhiSpec phi = PhiSpec::power(d, 1.0 / src.q());

      const double pn = phi_norm(x, phi, src);
      duality.record(std::max(0.0, dot(x, y) - pn * dual_phi_norm(y, phi, src)) / (1.0 + std::abs(dot(x, y))), x);
      const BoundReport r = l0_lower_bound(x, phi, src);
      validity.record(std::max(0.0, -r.slack), x);
      holder.record(rel(std::pow(r.ratio, src.q()), holder_ratio_bound(x, src)), x);

      const SourceNorm l1 = SourceNorm::lp(1.0);
      std::vector<ExtReal> ones(d + 1, ExtReal(1.0));  // l^(1/q) with q = inf
      ones[0] = ExtReal(0.0);
      const PhiSpec flat(ones);
      trivial.record(std::max(0.0, l0_lower_bound(x, flat, l1).ratio - 1.0), x);
    }
  }

  {
    Tally& t = tally("solver.deterministic_iterates", "solver", 0.0);
    for (std::size_t i = 0; i < std::min<std::size_t>(n, 10); ++i) {
      const std::size_t d = s.integer(2, 5);
      const Vector x = s.gaussian_vector(d);
      const std::size_t k = s.integer(1, d);
      const SourceNorm src = SourceNorm::lp(3.0);
      const NormEvaluation a = coordinate_norm_generic(x, k, src);
      const NormEvaluation b = coordinate_norm_generic(x, k, src);
      t.record(a.value == b.value && a.dual_point == b.dual_point ? 0.0 : 1.0, x);
    }
  }

  Json report;
  report["seed"] = opts.seed;
  report["trials"] = n;
  bool passed = true;
  Json first = nullptr;
  Json checks = Json::array();
  for (const Tally& t : tallies) {
    if (t.violations > 0) {
      passed = false;
      if (first.is_null()) {
        first = Json{{"check", t.name}, {"vector", capra::to_json(*t.counterexample)}};
      }
    }
    checks.push_back(t.to_json());
  }
  report["passed"] = passed;
  report["first_counterexample"] = first;
  report["checks"] = checks;
  return report;
}

}  // namespace capra
