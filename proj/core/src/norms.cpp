#include "capra/norms.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "capra/errors.hpp"

namespace capra {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void require_k(std::size_t k, std::size_t d, std::size_t lowest, const char* what) {
  if (k < lowest || k > d) {
    throw InvalidArgument(std::string(what) + ": k=" + std::to_string(k) + " outside " +
                          std::to_string(lowest) + ".." + std::to_string(d));
  }
}

}  // namespace

SourceNorm SourceNorm::lp(double p) {
  if (std::isnan(p) || p < 1.0) throw InvalidArgument("SourceNorm: p must lie in [1, inf]");
  if (p == 1.0) return SourceNorm(1.0, kInf);
  if (std::isinf(p)) return SourceNorm(kInf, 1.0);
  return SourceNorm(p, p / (p - 1.0));
}

SourceNorm SourceNorm::parse(std::string_view text) {
  if (text == "inf" || text == "+inf" || text == "Inf" || text == "infinity") return lp(kInf);
  const std::string s(text);
  char* end = nullptr;
  errno = 0;
  const double p = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno != 0 || !std::isfinite(p)) {
    throw InvalidArgument("SourceNorm: cannot parse p from '" + s + "'");
  }
  return lp(p);
}

bool SourceNorm::p_is_inf() const { return std::isinf(p_); }
bool SourceNorm::strictly_convex() const { return p_ > 1.0 && !std::isinf(p_); }

std::string SourceNorm::to_string() const {
  if (p_is_inf()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p_);
  return buf;
}

double lp_norm(VectorView x, double p) {
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  const double m = max_abs(x);
  if (std::isinf(p) || m == 0.0) return m;
  double s = 0.0;
  if (p == 2.0) {
    for (double v : x) s += (v / m) * (v / m);
    return m * std::sqrt(s);
  }
  for (double v : x) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

Vector lp_norming_point(VectorView x, double p) {
  Vector y(x.size(), 0.0);
  if (is_zero(x)) return y;
  if (p == 1.0) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = sign(x[i]);
    return y;
  }
  if (std::isinf(p)) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
      if (std::abs(x[i]) > std::abs(x[best])) best = i;
    }
    y[best] = sign(x[best]);
    return y;
  }
  const double n = lp_norm(x, p);
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = sign(x[i]) * (p == 2.0 ? std::abs(x[i]) / n : std::pow(std::abs(x[i]) / n, p - 1.0));
  }
  return y;
}

double source_norm(VectorView x, const SourceNorm& src) { return lp_norm(x, src.p()); }
double dual_norm(VectorView y, const SourceNorm& src) { return lp_norm(y, src.q()); }

double restriction_norm(VectorView x, const SupportSet& K, const SourceNorm& src) {
  if (!supported_in(x, K)) throw InvalidArgument("restriction_norm: x is not supported in K");
  return lp_norm(x, src.p());
}

double k_star_norm(VectorView y, const SupportSet& K, const SourceNorm& src) {
  if (!supported_in(y, K)) throw InvalidArgument("k_star_norm: y is not supported in K");
  return lp_norm(y, src.q());
}

std::vector<std::size_t> top_k_indices(VectorView y, std::size_t k) {
  require_k(k, y.size(), 0, "top_k_indices");
  std::vector<std::size_t> idx(y.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double ya = std::abs(y[a]), yb = std::abs(y[b]);
                      return ya > yb || (ya == yb && a < b);
                    });
  idx.resize(k);
  return idx;
}

double dual_coordinate_norm(VectorView y, std::size_t k, const SourceNorm& src) {
  require_k(k, y.size(), 0, "dual_coordinate_norm");
  if (k == 0) return 0.0;
  if (k == y.size()) return lp_norm(y, src.q());
  Vector top;
  top.reserve(k);
  for (std::size_t i : top_k_indices(y, k)) top.push_back(y[i]);
  return lp_norm(top, src.q());
}

Vector dual_coordinate_subgradient(VectorView y, std::size_t k, const SourceNorm& src) {
  require_k(k, y.size(), 0, "dual_coordinate_subgradient");
  Vector g(y.size(), 0.0);
  if (k == 0) return g;
  const auto idx = top_k_indices(y, k);
  Vector top;
  top.reserve(k);
  for (std::size_t i : idx) top.push_back(y[i]);
  const Vector gt = lp_norming_point(top, src.q());
  for (std::size_t j = 0; j < k; ++j) g[idx[j]] = gt[j];
  return g;
}

NormEvaluation k_support_norm(VectorView x, std::size_t k) {
  const std::size_t d = x.size();
  require_k(k, d, 1, "k_support_norm");
  NormEvaluation out;
  out.closed_form = true;
  out.dual_point.assign(d, 0.0);
  const double m = max_abs(x);
  if (m == 0.0) return out;

  const auto order = top_k_indices(x, d);
  // z[1..d] sorted magnitudes scaled by max |x|, z[0] = +inf.
  Vector z(d + 1);
  z[0] = kInf;
  for (std::size_t i = 0; i < d; ++i) z[i + 1] = std::abs(x[order[i]]) / m;
  Vector suffix(d + 2, 0.0);
  for (std::size_t i = d; i >= 1; --i) suffix[i] = suffix[i + 1] + z[i];

  // r in {0..k-1} with z[k-r-1] > T_r/(r+1) >= z[k-r], T_r = sum_{i >= k-r} z[i].
  std::size_t r_best = 0;
  double best_violation = kInf;
  for (std::size_t r = 0; r < k; ++r) {
    const double t = suffix[k - r] / double(r + 1);
    const double violation = std::max(0.0, t - z[k - r - 1]) + std::max(0.0, z[k - r] - t);
    if (violation < best_violation) {
      best_violation = violation;
      r_best = r;
    }
    if (violation <= 1e-15) break;
  }
  const std::size_t r = r_best;
  const std::size_t head = k - r - 1;
  const double tail = suffix[k - r];
  double sq = tail * tail / double(r + 1);
  for (std::size_t i = 1; i <= head; ++i) sq += z[i] * z[i];
  const double n = std::sqrt(sq);
  out.value = m * n;

  const double tail_level = tail / double(r + 1) / n;
  for (std::size_t i = 1; i <= d; ++i) {
    const std::size_t j = order[i - 1];
    out.dual_point[j] = sign(x[j]) * (i <= head ? z[i] / n : tail_level);
  }
  return out;
}

NormEvaluation coordinate_norm_generic(VectorView x, std::size_t k, const SourceNorm& src,
                                       const SolverConfig& cfg) {
  require_k(k, x.size(), 1, "coordinate_norm");
  require_finite(x, "coordinate_norm");
  const SupportResult r = support_function_over_ball(x, TopKGauge(k, src), cfg);
  NormEvaluation out;
  out.value = r.value;
  out.dual_point = r.argmax;
  out.gap = std::max(0.0, r.upper - r.value);
  return out;
}

NormEvaluation coordinate_norm_eval(VectorView x, std::size_t k, const SourceNorm& src,
                                    const SolverConfig& cfg) {
  const std::size_t d = x.size();
  require_k(k, d, 1, "coordinate_norm");
  require_finite(x, "coordinate_norm");
  NormEvaluation out;
  out.closed_form = true;
  if (is_zero(x)) {
    out.dual_point.assign(d, 0.0);
    return out;
  }
  if (k == d) {
    out.value = lp_norm(x, src.p());
    out.dual_point = lp_norming_point(x, src.p());
    return out;
  }
  if (k == 1 || src.p() == 1.0) {
    out.value = lp_norm(x, 1.0);
    out.dual_point = lp_norming_point(x, 1.0);
    return out;
  }
  if (src.p_is_inf()) {
    const double linf = max_abs(x);
    const double l1 = lp_norm(x, 1.0);
    if (linf >= l1 / double(k)) {
      out.value = linf;
      out.dual_point = lp_norming_point(x, kInf);
    } else {
      out.value = l1 / double(k);
      out.dual_point.resize(d);
      for (std::size_t i = 0; i < d; ++i) out.dual_point[i] = sign(x[i]) / double(k);
    }
    return out;
  }
  if (src.p() == 2.0) return k_support_norm(x, k);
  return coordinate_norm_generic(x, k, src, cfg);
}

double coordinate_norm(VectorView x, std::size_t k, const SourceNorm& src,
                       const SolverConfig& cfg) {
  return coordinate_norm_eval(x, k, src, cfg).value;
}

NormSequence norm_sequence(VectorView x, const SourceNorm& src, const SolverConfig& cfg) {
  NormSequence seq;
  seq.values.reserve(x.size());
  for (std::size_t k = 1; k <= x.size(); ++k) seq.values.push_back(coordinate_norm(x, k, src, cfg));
  return seq;
}

NormSequence norm_sequence(VectorView x, VectorView y, const SourceNorm& src,
                           const SolverConfig& cfg) {
  require_same_dim(x, y, "norm_sequence");
  NormSequence seq = norm_sequence(x, src, cfg);
  seq.dual_values.reserve(y.size());
  for (std::size_t k = 1; k <= y.size(); ++k) seq.dual_values.push_back(dual_coordinate_norm(y, k, src));
  return seq;
}

std::size_t sparsity_from_grading(VectorView x, const SourceNorm& src, double tol,
                                  const SolverConfig& cfg) {
  if (!(tol >= 0.0)) throw InvalidArgument("sparsity_from_grading: tol must be nonnegative");
  if (is_zero(x)) throw InvalidArgument("sparsity_from_grading: x must be nonzero");
  const NormSequence seq = norm_sequence(x, src, cfg);
  const double last = seq.values.back();
  for (std::size_t k = 1; k <= seq.values.size(); ++k) {
    if (std::abs(seq.values[k - 1] - last) <= tol * last) return k;
  }
  return seq.values.size();
}

}  // namespace capra
