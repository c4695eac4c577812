#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "capra/gauge.hpp"
#include "capra/vector.hpp"

namespace capra {

enum class StepRule {
  kCuttingPlane,  // Kelley: LP over accumulated cuts, certified upper bound
  kDiminishing,   // normalized supergradient steps of length R/sqrt(t)
  kPolyak,        // Polyak steps toward `target` (or best + R/sqrt(t))
};

struct SolverConfig {
  std::size_t max_iters = 2000;
  /// Relative gap at which an iteration stops.
  double tol = 1e-9;
  /// Relative gap still accepted when max_iters runs out; beyond it the
  /// solver throws ConvergenceError.
  double accept_tol = 1e-6;
  StepRule step_rule = StepRule::kCuttingPlane;
  std::uint64_t seed = 0;
  /// Initial half-width of the trust box (<= 0 picks a default).
  double box_radius = 0.0;
  double max_box_radius = 1e6;
  std::optional<double> target;
};

struct SupportResult {
  double value = 0.0;  // <x, argmax>, a certified lower bound
  double upper = 0.0;  // LP relaxation bound
  Vector argmax;       // gauge(argmax) <= 1
  std::size_t iterations = 0;
  double gauge_at_argmax = 0.0;
};

/// sup { <x, y> : gauge(y) <= 1 } by column generation.
SupportResult support_function_over_ball(VectorView x, const Gauge& gauge,
                                         const SolverConfig& cfg = {});

/// Writes a supergradient into the second argument and returns the value.
using ConcaveObjective = std::function<double(VectorView, Vector&)>;

struct AscentResult {
  double value = 0.0;  // objective at argmax
  double upper = 0.0;  // cutting-plane bound over the final box (+inf for step rules)
  Vector argmax;
  std::size_t iterations = 0;
  double box_radius = 0.0;
  bool box_limited = false;  // the box hit max_box_radius while still binding
};

/// Maximizes a concave function starting from y0.
AscentResult concave_ascent(const ConcaveObjective& objective, VectorView y0,
                            const SolverConfig& cfg = {});

/// min sum_b w_b N_b(z_b)  s.t.  sum_b z_b = x  [and sum_b N_b(z_b) <= budget].
struct DecompositionProblem {
  Vector x;
  std::vector<double> weights;
  std::vector<const Gauge*> norms;
  std::optional<double> budget;
  /// Bound on |entries| of every block at some optimum.
  double box_radius = 1.0;
  /// Block that receives all of x in the starting point.
  std::size_t start_block = 0;
};

struct DecompositionResult {
  double value = 0.0;  // objective at the returned blocks
  double lower = 0.0;  // cutting-plane lower bound
  std::vector<Vector> blocks;
  double budget_residual = 0.0;  // sum N_b(z_b) - budget (<= 0 up to tolerance)
  double sum_residual = 0.0;     // max |sum z_b - x|
  std::size_t iterations = 0;
};

DecompositionResult decomposition_min(const DecompositionProblem& problem,
                                      const SolverConfig& cfg = {});

/// Gauge value of `point` when only a ball-membership test is available.
double gauge_bisection(VectorView point, const std::function<bool(VectorView)>& in_ball,
                       double tol = 1e-12);
/// Pass-through for directly evaluable gauges.
double gauge_bisection(VectorView point, const Gauge& gauge);

}  // namespace capra
