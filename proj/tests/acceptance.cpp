// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "capra/bounds.hpp"
#include "capra/conjugacy.hpp"
#include "capra/errors.hpp"
#include "capra/l0.hpp"
#include "capra/norms.hpp"
#include "capra/oracle.hpp"

#ifdef CAPRA_HAVE_CLI
#include "cli_app.hpp"
#endif

using namespace capra;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double gaussian() { return std::normal_distribution<double>()(gen_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  std::size_t integer(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(gen_);
  }
  bool coin(double p) { return std::bernoulli_distribution(p)(gen_); }
  Vector gaussian_vector(std::size_t d) {
    Vector v(d);
    for (double& x : v) x = gaussian();
    return v;
  }
  /// Exactly `nnz` nonzeros at random positions, magnitudes in [lo, hi], random signs.
  Vector sparse_vector(std::size_t d, std::size_t nnz, double lo, double hi) {
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), gen_);
    Vector v(d, 0.0);
    for (std::size_t j = 0; j < nnz; ++j) v[idx[j]] = (coin(0.5) ? 1.0 : -1.0) * uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bool closed_form_path(const SourceNorm& src) {
  return src.p() == 1.0 || src.p() == 2.0 || src.p_is_inf();
}

Outcome criterion1() {
  Rng rng(101);
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double p : {1.0, 2.0, kInf}) {
    const SourceNorm src = SourceNorm::lp(p);
    for (int t = 0; t < 1000; ++t) {
      const Vector y = rng.gaussian_vector(rng.integer(1, 8));
      for (std::size_t k = 0; k <= y.size(); ++k) {
        worst = std::max(worst, std::abs(dual_coordinate_norm(y, k, src) - dual_norm_by_subsets(y, k, src)));
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-12 && secs < 10.0, fmt("max abs diff %.3g, %.2f s", worst, secs)};
}

Outcome criterion2() {
  Rng rng(102);
  double closed = 0.0, solver = 0.0, dual = 0.0;
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, kInf};
  for (int t = 0; t < 1000; ++t) {
    const SourceNorm src = SourceNorm::lp(ps[t % ps.size()]);
    const std::size_t d = rng.integer(1, 6);
    const Vector x = rng.gaussian_vector(d), y = rng.gaussian_vector(d);
    const NormSequence s = norm_sequence(x, y, src);
    for (std::size_t k = 1; k < d; ++k) {
      dual = std::max(dual, s.dual_values[k - 1] - s.dual_values[k]);
      const double up = s.values[k] - s.values[k - 1];
      (closed_form_path(src) ? closed : solver) = std::max(closed_form_path(src) ? closed : solver, up);
    }
  }
  return {dual <= 1e-9 && closed <= 1e-9 && solver <= 1e-5,
          fmt("dual %.3g, primal closed-form %.3g, primal solver %.3g", dual, closed, solver)};
}

Outcome criterion3() {
  Rng rng(103);
  double worst = 0.0;
  for (double p : {1.0, 2.0, kInf}) {
    const SourceNorm src = SourceNorm::lp(p);
    for (int t = 0; t < 1000; ++t) {
      const std::size_t d = rng.integer(1, 10);
      const Vector x = rng.gaussian_vector(d), y = rng.gaussian_vector(d);
      worst = std::max(worst, std::abs(coordinate_norm(x, d, src) - source_norm(x, src)));
      worst = std::max(worst, std::abs(dual_coordinate_norm(y, d, src) - dual_norm(y, src)));
    }
  }
  return {worst <= 1e-9, fmt("max abs diff %.3g", worst)};
}

Outcome criterion4() {
  Rng rng(104);
  const SourceNorm l2 = SourceNorm::lp(2.0);
  const auto t0 = std::chrono::steady_clock::now();
  int hits = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = rng.integer(3, 6);
    const Vector x = rng.sparse_vector(d, rng.integer(1, d), 0.1, 2.0);
    if (sparsity_from_grading(x, l2, 1e-6) == l0(x)) ++hits;
  }
  const double secs = seconds_since(t0);
  return {hits == 200 && secs < 60.0, fmt("%.0f/200 exact, %.2f s", hits, secs)};
}

Outcome criterion5() {
  Rng rng(105);
  int violations = 0, strict_misses = 0, total = 0;
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    const SourceNorm src = SourceNorm::lp(p);
    for (int t = 0; t < 100; ++t) {
      const std::size_t d = rng.integer(2, 6);
      const Vector x = rng.sparse_vector(d, rng.integer(1, d), 0.1, 2.0);
      const std::size_t k = sparsity_from_grading(x, src);
      ++total;
      if (k > l0(x)) ++violations;
      if (k != l0(x)) ++strict_misses;
    }
  }
  return {violations == 0, fmt("%.0f violations in %.0f; %.0f strictly below l0 (p in {1, inf})",
                               violations, total, strict_misses)};
}

Outcome criterion6() {
  Rng rng(106);
  double worst = 0.0;
  for (double p : {1.0, 2.0, kInf}) {
    const SourceNorm src = SourceNorm::lp(p);
    for (int t = 0; t < 1000; ++t) {
      const std::size_t d = rng.integer(1, 8);
      const Vector y = rng.gaussian_vector(d);
      for (std::size_t k = 0; k <= d; ++k) {
        const ExtReal c = capra_conjugate(PhiSpec::levelset(d, k), y, src);
        worst = std::max(worst, c.is_finite() ? std::abs(c.value() - dual_coordinate_norm(y, k, src)) : kInf);
      }
    }
  }
  return {worst <= 1e-12, fmt("max abs diff %.3g", worst)};
}

Outcome criterion7() {
  Rng rng(107);
  const SourceNorm l2 = SourceNorm::lp(2.0);
  const auto t0 = std::chrono::steady_clock::now();
  double agree = 0.0, galois = -kInf;
  int failures = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = 2 + t % 3;
    const Vector x = rng.sparse_vector(d, rng.integer(1, d), 0.5, 1.5);
    const PhiSpec id = PhiSpec::identity(d);
    try {
      const BiconjugateResult r = capra_biconjugate(id, x, l2);
      if (!r.value.is_finite() || !r.variational) {
        ++failures;
        continue;
      }
      const double a = r.value.value(), b = *r.variational;
      agree = std::max(agree, std::abs(a - b) / std::max(1.0, std::abs(a)));
      galois = std::max(galois, std::max(a, b) - double(l0(x)));
    } catch (const Error&) {
      ++failures;
    }
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && agree <= 1e-3 && galois <= 1e-6 && secs < 300.0,
          fmt("max relative gap %.3g, max excess over l0 %.3g, %.1f s", agree, galois, secs) +
              (failures ? " (" + std::to_string(failures) + " solver failures)" : "")};
}

Outcome criterion8() {
  Rng rng(108);
  const SourceNorm l2 = SourceNorm::lp(2.0);
  int correct = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t d = rng.integer(2, 6);
    const std::size_t k = rng.integer(1, d - 1);
    const Vector sparse = rng.sparse_vector(d, rng.integer(1, k), 0.1, 2.0);
    Vector flat = rng.sparse_vector(d, k + 1, 1.0, 1.0);
    const double scale = rng.uniform(0.1, 10.0);
    for (double& v : flat) v *= scale;
    const bool ok = biconjugate_levelset_indicator(k, sparse, l2) == ExtReal(0.0) &&
                    biconjugate_levelset_indicator(k, flat, l2).is_plus_infinity();
    if (ok) ++correct;
  }
  return {correct == 500, fmt("%.0f/500 trials correct", correct)};
}

// y attaining the conjugate at l = l0(x): the norming dual point of x, scaled
// until the l0(x) term dominates the smaller indices.
Vector fenchel_young_dual_point(VectorView x, const SourceNorm& src, const PhiSpec& phi) {
  const std::size_t l = l0(x);
  const Vector y0 = coordinate_norm_eval(x, l, src).dual_point;
  const double top = dual_coordinate_norm(y0, l, src);
  double c = 1.0;
  for (std::size_t j = 0; j < l; ++j) {
    const double gap = top - dual_coordinate_norm(y0, j, src);
    if (gap > 1e-12) c = std::max(c, (phi(l).value() - phi(j).value()) / gap);
  }
  return scaled(y0, 1.01 * c);
}

Outcome criterion9() {
  Rng rng(109);
  const SourceNorm l2 = SourceNorm::lp(2.0);
  double worst = 0.0;
  int members = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = rng.integer(2, 6);
    const Vector x = rng.sparse_vector(d, rng.integer(1, d), 0.1, 2.0);
    const PhiSpec id = PhiSpec::identity(d);
    const Vector y = fenchel_young_dual_point(x, l2, id);
    if (!subdiff_membership(id, x, y, l2).member) continue;
    ++members;
    const double lhs = capra_conjugate(id, y, l2).value();
    const double rhs = coupling(x, y, l2) - double(l0(x));
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  const PhiSpec id2 = PhiSpec::identity(2);
  std::vector<ExtReal> blocked(3, ExtReal::plus_infinity());
  blocked[0] = ExtReal(0.0);
  const bool fixtures = subdiff_membership(id2, Vector{1, 0}, Vector{2, 0}, l2).member &&
                        !subdiff_membership(id2, Vector{1, 0}, Vector{0, 1}, l2).member &&
                        !subdiff_membership(PhiSpec(blocked), Vector{1, 0}, Vector{0.5, 3}, l2).member;
  return {members > 0 && worst <= 1e-6 && fixtures,
          fmt("%.0f/200 members, max residual %.3g", members, worst) +
              (fixtures ? ", d=2 fixtures ok" : ", d=2 fixtures FAILED")};
}

Outcome criterion10() {
  Rng rng(110);
  double slack = kInf, holder = 0.0;
  const std::vector<double> ps{2.0, 3.0, kInf};
  for (int t = 0; t < 1000; ++t) {
    const SourceNorm src = SourceNorm::lp(ps[t % 3]);
    const std::size_t d = rng.integer(1, 6);
    const Vector x = rng.sparse_vector(d, rng.integer(1, d), 0.1, 2.0);
    const BoundReport r = l0_lower_bound(x, PhiSpec::power(d, 1.0 / src.q()), src);
    slack = std::min(slack, r.slack);
    const double reference = std::pow(holder_ratio_bound(x, src), 1.0 / src.q());
    holder = std::max(holder, std::abs(r.ratio - reference));
  }
  return {slack >= -1e-6 && holder <= 1e-6, fmt("min slack %.3g, max Holder diff %.3g", slack, holder)};
}

Outcome criterion11() {
  const SourceNorm l2 = SourceNorm::lp(2.0);
  const PhiSpec id = PhiSpec::identity(2);
  const SampledFunction conj =
      sample_on_grid({-16.0, 16.0, 0.1, 2}, [&](VectorView y) { return capra_conjugate(id, y, l2).value(); });
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double theta = M_PI / 8 + (M_PI / 4) * (i % 25) / 24.0 + (M_PI / 2) * (i / 25);
    const Vector u{std::cos(theta), std::sin(theta)};
    const ExtReal bic = capra_biconjugate(id, u, l2, {}, {.run_variational = false}).value;
    const double grid = legendre_at(conj, u);
    worst = std::max(worst, bic.is_finite() ? std::abs(bic.value() - grid) : kInf);
  }
  return {worst <= 0.02, fmt("max |ascent - grid| %.3g over 100 sphere points", worst)};
}

Outcome criterion12() {
#ifdef CAPRA_HAVE_CLI
  std::ostringstream a, b, ea, eb;
  const std::vector<std::string> args{"check", "--seed", "12", "--trials", "20"};
  const int ca = cli::run(args, a, ea);
  const int cb = cli::run(args, b, eb);
  const bool same = a.str() == b.str() && !a.str().empty();
  return {same && ca == 0 && cb == 0,
          std::string(same ? "byte-identical" : "reports differ") + ", exit codes " + std::to_string(ca) + "/" +
              std::to_string(cb) + ", " + std::to_string(a.str().size()) + " bytes"};
#else
  return {false, "built without the command-line tool"};
#endif
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"dual coordinate norm equals subset oracle", criterion1},
      {"monotone norm sequences", criterion2},
      {"k = d collapse", criterion3},
      {"strict grading recovers l0 (p = 2)", criterion4},
      {"graded lower bound on l0 (every p)", criterion5},
      {"level-set conjugate is the top-k norm", criterion6},
      {"biconjugate route agreement and galois inequality", criterion7},
      {"level-set indicators are Capra-convex (p = 2)", criterion8},
      {"subdifferential Fenchel-Young equality", criterion9},
      {"phi-norm bound validity and Holder specialization", criterion10},
      {"grid Legendre cross-check of the biconjugate (d = 2)", criterion11},
      {"check suite is deterministic", criterion12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] criterion %2zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
