#include "capra/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "capra/errors.hpp"
#include "capra/linear_program.hpp"

namespace capra {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vector unit(std::size_t rows, std::size_t r, double sign) {
  Vector e(rows, 0.0);
  e[r] = sign;
  return e;
}

void require_lp(ColumnLp::Status status, const char* where) {
  if (status != ColumnLp::Status::kOptimal) {
    throw ConvergenceError(std::string(where) + ": cutting-plane LP did not reach optimality",
                           kInf);
  }
}

double norm2(VectorView v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Box columns +e_{offset+i} / -e_{offset+i} for |y_i - c_i| <= R.
struct Box {
  std::size_t first = 0;  // index of the +e column of coordinate 0
  std::size_t dim = 0;

  void add(ColumnLp& lp, std::size_t offset, VectorView center, double radius) {
    first = lp.columns();
    dim = center.size();
    for (std::size_t i = 0; i < dim; ++i) {
      lp.add_column(unit(lp.rows(), offset + i, 1.0), center[i] + radius);
      lp.add_column(unit(lp.rows(), offset + i, -1.0), radius - center[i]);
    }
  }
  void resize(ColumnLp& lp, VectorView center, double radius) const {
    for (std::size_t i = 0; i < dim; ++i) {
      lp.set_cost(first + 2 * i, center[i] + radius);
      lp.set_cost(first + 2 * i + 1, radius - center[i]);
    }
  }
  std::size_t column(std::size_t i, bool plus) const { return first + 2 * i + (plus ? 0 : 1); }
  bool binding(const ColumnLp& lp, double eps) const {
    for (std::size_t j = first; j < first + 2 * dim; ++j) {
      if (lp.primal(j) > eps) return true;
    }
    return false;
  }
};

void check_finite(double v, const char* where) {
  if (!std::isfinite(v)) throw Error(std::string(where) + ": objective is not finite at an iterate");
}

AscentResult step_ascent(const ConcaveObjective& objective, VectorView y0,
                         const SolverConfig& cfg) {
  const std::size_t d = y0.size();
  const double radius = cfg.box_radius > 0 ? cfg.box_radius : 4.0 * std::max(1.0, max_abs(y0));
  Vector y(y0.begin(), y0.end());
  Vector g(d, 0.0);
  AscentResult out;
  out.value = -kInf;
  out.upper = kInf;
  out.box_radius = radius;
  for (std::size_t t = 1; t <= cfg.max_iters; ++t) {
    const double f = objective(y, g);
    check_finite(f, "concave_ascent");
    if (f > out.value) {
      out.value = f;
      out.argmax = y;
    }
    out.iterations = t;
    const double gn = norm2(g);
    if (gn == 0.0) break;  // stationary point of a concave function
    double step;
    if (cfg.step_rule == StepRule::kPolyak) {
      const double target = cfg.target ? *cfg.target : out.value + radius / std::sqrt(double(t));
      step = std::max(target - f, 0.0) / (gn * gn);
      if (step == 0.0) break;
    } else {
      step = radius / std::sqrt(double(t)) / gn;
    }
    for (std::size_t i = 0; i < d; ++i) {
      y[i] = std::clamp(y[i] + step * g[i], y0[i] - radius, y0[i] + radius);
    }
  }
  return out;
}

}  // namespace

SupportResult support_function_over_ball(VectorView x, const Gauge& gauge,
                                         const SolverConfig& cfg) {
  require_finite(x, "support_function_over_ball");
  const std::size_t d = x.size();
  SupportResult out;
  out.argmax.assign(d, 0.0);
  if (is_zero(x)) return out;
  const double scale = max_abs(x);
  if (scale != 1.0) {
    // The support function is 1-homogeneous; solve at unit scale so LP tolerances stay meaningful.
    out = support_function_over_ball(scaled(x, 1.0 / scale), gauge, cfg);
    out.value *= scale;
    out.upper *= scale;
    return out;
  }

  const bool known_box = gauge.coordinate_bound() > 0.0;
  double radius = known_box ? gauge.coordinate_bound()
                            : (cfg.box_radius > 0 ? cfg.box_radius : 1.0);
  const Vector center(d, 0.0);

  ColumnLp lp(d, Vector(x.begin(), x.end()));
  Box box;
  box.add(lp, 0, center, radius);
  std::vector<std::size_t> basis(d);
  for (std::size_t i = 0; i < d; ++i) basis[i] = box.column(i, x[i] >= 0.0);
  lp.set_basis(basis);

  double best = -kInf;
  double gap = kInf;
  for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
    out.iterations = it;
    require_lp(lp.solve(), "support_function_over_ball");
    const Vector y = lp.duals();
    out.upper = lp.objective();
    const double g = gauge.value(y);
    if (g > 0.0) {
      const double shrink = std::max(g, 1.0);
      const double lower = dot(x, y) / shrink;
      if (lower > best) {
        best = lower;
        out.argmax = scaled(y, 1.0 / shrink);
        out.gauge_at_argmax = g / shrink;
      }
    }
    gap = out.upper - best;
    if (gap <= cfg.tol * std::max(std::abs(out.upper), 1e-300)) {
      if (!known_box && radius < cfg.max_box_radius && box.binding(lp, 1e-12)) {
        radius = std::min(4.0 * radius, cfg.max_box_radius);
        box.resize(lp, center, radius);
        continue;
      }
      out.value = best;
      return out;
    }
    if (g > 1.0) lp.add_column(gauge.subgradient(y), 1.0);
  }
  if (gap <= cfg.accept_tol * std::max(std::abs(out.upper), 1e-300)) {
    out.value = best;
    return out;
  }
  throw ConvergenceError("support_function_over_ball: iteration budget exhausted", gap);
}

AscentResult concave_ascent(const ConcaveObjective& objective, VectorView y0,
                            const SolverConfig& cfg) {
  require_finite(y0, "concave_ascent");
  if (cfg.step_rule != StepRule::kCuttingPlane) return step_ascent(objective, y0, cfg);

  const std::size_t d = y0.size();
  const Vector center(y0.begin(), y0.end());
  double radius = cfg.box_radius > 0 ? cfg.box_radius : 4.0 * std::max(1.0, max_abs(y0));

  Vector rhs(d + 1, 0.0);
  rhs[0] = 1.0;
  ColumnLp lp(d + 1, rhs);
  auto add_cut = [&](VectorView y, double f, VectorView g) {
    Vector col(d + 1);
    col[0] = 1.0;
    for (std::size_t i = 0; i < d; ++i) col[1 + i] = -g[i];
    return lp.add_column(std::move(col), f - dot(g, y));
  };

  AscentResult out;
  Vector g(d, 0.0);
  out.value = objective(center, g);
  check_finite(out.value, "concave_ascent");
  out.argmax = center;
  const std::size_t cut0 = add_cut(center, out.value, g);
  Box box;
  box.add(lp, 1, center, radius);
  std::vector<std::size_t> basis{cut0};
  for (std::size_t i = 0; i < d; ++i) basis.push_back(box.column(i, g[i] >= 0.0));
  lp.set_basis(basis);

  double gap = kInf;
  for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
    out.iterations = it;
    require_lp(lp.solve(), "concave_ascent");
    const Vector& z = lp.duals();
    out.upper = lp.objective();
    const Vector y(z.begin() + 1, z.end());
    const double f = objective(y, g);
    check_finite(f, "concave_ascent");
    if (f > out.value) {
      out.value = f;
      out.argmax = y;
    }
    add_cut(y, f, g);
    gap = out.upper - out.value;
    if (gap <= cfg.tol * std::max(1.0, std::abs(out.value))) {
      if (box.binding(lp, 1e-9)) {
        if (radius < cfg.max_box_radius) {
          radius = std::min(4.0 * radius, cfg.max_box_radius);
          box.resize(lp, center, radius);
          continue;
        }
        out.box_limited = true;
      }
      out.box_radius = radius;
      return out;
    }
  }
  out.box_radius = radius;
  if (gap <= cfg.accept_tol * std::max(1.0, std::abs(out.value))) return out;
  throw ConvergenceError("concave_ascent: iteration budget exhausted", gap);
}

DecompositionResult decomposition_min(const DecompositionProblem& pb, const SolverConfig& cfg) {
  const std::size_t m = pb.norms.size();
  const std::size_t d = pb.x.size();
  if (m == 0 || pb.weights.size() != m) {
    throw InvalidArgument("decomposition_min: need one weight per block norm");
  }
  if (pb.start_block >= m) throw InvalidArgument("decomposition_min: start block out of range");
  require_finite(pb.x, "decomposition_min");
  const std::size_t n = (m - 1) * d;  // the last block is x minus the others

  struct Eval {
    double F = 0.0, C = 0.0;
    Vector gF, gC;
    std::vector<Vector> blocks;
  };
  auto blocks_of = [&](VectorView w) {
    std::vector<Vector> z(m, Vector(d, 0.0));
    z[m - 1].assign(pb.x.begin(), pb.x.end());
    for (std::size_t b = 0; b + 1 < m; ++b) {
      for (std::size_t i = 0; i < d; ++i) {
        z[b][i] = w[b * d + i];
        z[m - 1][i] -= w[b * d + i];
      }
    }
    return z;
  };
  auto evaluate = [&](VectorView w) {
    Eval e;
    e.blocks = blocks_of(w);
    std::vector<Vector> g(m);
    double total = 0.0;
    for (std::size_t b = 0; b < m; ++b) {
      const double nb = pb.norms[b]->value(e.blocks[b]);
      g[b] = pb.norms[b]->subgradient(e.blocks[b]);
      e.F += pb.weights[b] * nb;
      total += nb;
    }
    e.C = pb.budget ? total - *pb.budget : -1.0;
    e.gF.assign(n, 0.0);
    e.gC.assign(n, 0.0);
    for (std::size_t b = 0; b + 1 < m; ++b) {
      for (std::size_t i = 0; i < d; ++i) {
        e.gF[b * d + i] = pb.weights[b] * g[b][i] - pb.weights[m - 1] * g[m - 1][i];
        e.gC[b * d + i] = g[b][i] - g[m - 1][i];
      }
    }
    return e;
  };
  auto finish = [&](const Eval& e, double lower, std::size_t iters) {
    DecompositionResult r;
    r.value = e.F;
    r.lower = std::min(lower, e.F);
    r.blocks = e.blocks;
    r.budget_residual = pb.budget ? e.C : 0.0;
    Vector sum(d, 0.0);
    for (const Vector& z : e.blocks) {
      for (std::size_t i = 0; i < d; ++i) sum[i] += z[i];
    }
    for (std::size_t i = 0; i < d; ++i) r.sum_residual = std::max(r.sum_residual, std::abs(sum[i] - pb.x[i]));
    r.iterations = iters;
    return r;
  };

  const double feas_tol = pb.budget ? 10.0 * cfg.tol * std::max(*pb.budget, 1e-300) : 0.0;
  Vector w(n, 0.0);
  if (pb.start_block + 1 < m) {
    std::copy(pb.x.begin(), pb.x.end(), w.begin() + static_cast<std::ptrdiff_t>(pb.start_block * d));
  }
  Eval best = evaluate(w);
  if (pb.budget && best.C > feas_tol) {
    std::fill(w.begin(), w.end(), 0.0);
    best = evaluate(w);
    if (best.C > feas_tol) {
      throw Error("decomposition_min: starting point violates the budget");
    }
  }
  Vector best_w = w;
  if (m == 1) return finish(best, best.F, 0);

  Vector rhs(n + 1, 0.0);
  rhs[0] = -1.0;
  ColumnLp lp(n + 1, rhs);
  auto add_cuts = [&](VectorView at, const Eval& e) {
    Vector obj(n + 1), con(n + 1);
    obj[0] = -1.0;
    con[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      obj[1 + i] = e.gF[i];
      con[1 + i] = e.gC[i];
    }
    const std::size_t j = lp.add_column(std::move(obj), dot(e.gF, at) - e.F);
    if (pb.budget) lp.add_column(std::move(con), dot(e.gC, at) - e.C);
    return j;
  };
  const std::size_t cut0 = add_cuts(w, best);
  Box box;
  box.add(lp, 1, Vector(n, 0.0), pb.box_radius);
  std::vector<std::size_t> basis{cut0};
  for (std::size_t i = 0; i < n; ++i) basis.push_back(box.column(i, best.gF[i] <= 0.0));
  lp.set_basis(basis);

  double lower = -kInf;
  double gap = kInf;
  for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
    require_lp(lp.solve(), "decomposition_min");
    lower = -lp.objective();
    const Vector& z = lp.duals();
    const Vector cand(z.begin() + 1, z.end());
    Eval e = evaluate(cand);
    add_cuts(cand, e);
    if (e.C <= feas_tol) {
      if (e.F < best.F) {
        best = std::move(e);
        best_w = cand;
      }
    } else {
      // Pull back toward the best feasible point until the budget holds.
      double lo = 0.0, hi = 1.0;
      for (int k = 0; k < 50; ++k) {
        const double mid = 0.5 * (lo + hi);
        Vector trial(n);
        for (std::size_t i = 0; i < n; ++i) trial[i] = best_w[i] + mid * (cand[i] - best_w[i]);
        if (evaluate(trial).C <= feas_tol) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      if (lo > 0.0) {
        Vector trial(n);
        for (std::size_t i = 0; i < n; ++i) trial[i] = best_w[i] + lo * (cand[i] - best_w[i]);
        Eval r = evaluate(trial);
        add_cuts(trial, r);
        if (r.F < best.F) {
          best = std::move(r);
          best_w = trial;
        }
      }
    }
    gap = best.F - lower;
    if (gap <= cfg.tol * std::max(std::abs(best.F), 1e-300)) return finish(best, lower, it);
  }
  if (gap <= cfg.accept_tol * std::max(std::abs(best.F), 1e-300)) {
    return finish(best, lower, cfg.max_iters);
  }
  throw ConvergenceError("decomposition_min: iteration budget exhausted", gap);
}

double gauge_bisection(VectorView point, const std::function<bool(VectorView)>& in_ball,
                       double tol) {
  if (is_zero(point)) return 0.0;
  auto inside = [&](double lambda) { return in_ball(scaled(point, 1.0 / lambda)); };
  double hi = 1.0;
  while (!inside(hi)) {
    hi *= 2.0;
    if (hi > 1e300) throw Error("gauge_bisection: point is not absorbed by the ball");
  }
  double lo = hi / 2.0;
  while (inside(lo)) {
    hi = lo;
    lo /= 2.0;
    if (lo < 1e-300) return 0.0;
  }
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

double gauge_bisection(VectorView point, const Gauge& gauge) { return gauge.value(point); }

}  // namespace capra
