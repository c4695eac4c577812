#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "capra/errors.hpp"
#include "capra/linear_program.hpp"
#include "capra/norms.hpp"
#include "capra/solver.hpp"

using namespace capra;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST(ColumnLp, SmallProblem) {
  // min -x1 - x2  s.t.  x1 + 2 x2 + s1 = 4,  3 x1 + x2 + s2 = 6
  ColumnLp lp(2, Vector{4, 6});
  lp.add_column(Vector{1, 3}, -1.0);
  lp.add_column(Vector{2, 1}, -1.0);
  lp.add_column(Vector{1, 0}, 0.0);
  lp.add_column(Vector{0, 1}, 0.0);
  lp.set_basis({2, 3});
  ASSERT_EQ(lp.solve(100), ColumnLp::Status::kOptimal);
  EXPECT_NEAR(lp.objective(), -2.8, 1e-12);
  EXPECT_NEAR(lp.primal(0), 1.6, 1e-12);
  EXPECT_NEAR(lp.primal(1), 1.2, 1e-12);
  const Vector z = lp.duals();
  EXPECT_NEAR(z[0] * 4 + z[1] * 6, -2.8, 1e-12);
}

TEST(SupportFunction, EuclideanBall) {
  const SupportResult r = support_function_over_ball(Vector{1, 0}, LpGauge(2.0));
  EXPECT_NEAR(r.value, 1.0, 1e-9);
  EXPECT_NEAR(r.argmax[0], 1.0, 1e-6);
  EXPECT_NEAR(r.argmax[1], 0.0, 1e-4);
  EXPECT_LE(r.gauge_at_argmax, 1.0 + 1e-9);
}

TEST(SupportFunction, Cube) {
  const SupportResult r = support_function_over_ball(Vector{1, 1}, LpGauge(kInf));
  EXPECT_NEAR(r.value, 2.0, 1e-9);
}

TEST(SupportFunction, TopKBall) {
  const SupportResult r =
      support_function_over_ball(Vector{2, 1, 1}, TopKGauge(2, SourceNorm::lp(kInf)));
  EXPECT_NEAR(r.value, 2.0, 1e-9);
  EXPECT_LE(r.gauge_at_argmax, 1.0 + 1e-9);
  EXPECT_GE(r.upper, r.value - 1e-12);
}

TEST(SupportFunction, ZeroVector) {
  const SupportResult r = support_function_over_ball(Vector{0, 0, 0}, LpGauge(2.0));
  EXPECT_EQ(r.value, 0.0);
}

TEST(SupportFunction, UnknownBoundUsesAdaptiveBox) {
  // The l2 gauge reports no coordinate bound; the ball of 3 * l1 reaches |y_i| = 1/3.
  class Scaled final : public Gauge {
   public:
    double value(VectorView y) const override { return 3.0 * lp_norm(y, 1.0); }
    Vector subgradient(VectorView y) const override {
      Vector g(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) g[i] = y[i] > 0 ? 3.0 : (y[i] < 0 ? -3.0 : 0.0);
      return g;
    }
  };
  const SupportResult r = support_function_over_ball(Vector{1, -4}, Scaled());
  EXPECT_NEAR(r.value, 4.0 / 3.0, 1e-9);
}

TEST(ConcaveAscent, Quadratic) {
  const ConcaveObjective f = [](VectorView y, Vector& g) {
    g.assign(y.size(), 0.0);
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      s += y[i] * y[i];
      g[i] = -y[i];
    }
    g[0] += 1.0;
    return -0.5 * s + y[0];
  };
  const AscentResult r = concave_ascent(f, Vector{0, 0, 0});
  EXPECT_NEAR(r.value, 0.5, 1e-7);
  EXPECT_NEAR(r.argmax[0], 1.0, 1e-3);
}

TEST(ConcaveAscent, PiecewiseLinear) {
  const ConcaveObjective f = [](VectorView y, Vector& g) {
    g.assign(1, 0.0);
    if (y[0] <= 1.0 - y[0]) {
      g[0] = 1.0;
      return y[0];
    }
    g[0] = -1.0;
    return 1.0 - y[0];
  };
  const AscentResult r = concave_ascent(f, Vector{0});
  EXPECT_NEAR(r.value, 0.5, 1e-9);
  EXPECT_GE(r.upper, r.value - 1e-12);
  EXPECT_LE(r.upper - r.value, 1e-8);
}

TEST(ConcaveAscent, StepRulesReachTheOptimum) {
  const ConcaveObjective f = [](VectorView y, Vector& g) {
    g.assign(1, y[0] <= 1.0 - y[0] ? 1.0 : -1.0);
    return std::min(y[0], 1.0 - y[0]);
  };
  SolverConfig cfg;
  cfg.max_iters = 5000;
  for (StepRule rule : {StepRule::kDiminishing, StepRule::kPolyak}) {
    cfg.step_rule = rule;
    cfg.target = 0.5;
    const AscentResult r = concave_ascent(f, Vector{0}, cfg);
    EXPECT_NEAR(r.value, 0.5, 1e-3);
  }
}

TEST(ConcaveAscent, NonFiniteObjectiveThrows) {
  const ConcaveObjective f = [](VectorView, Vector& g) {
    g.assign(1, 0.0);
    return std::numeric_limits<double>::quiet_NaN();
  };
  EXPECT_THROW(concave_ascent(f, Vector{0}), Error);
}

TEST(ConcaveAscent, UnboundedObjectiveIsFlagged) {
  const ConcaveObjective f = [](VectorView y, Vector& g) {
    g.assign(1, 1.0);
    return y[0];
  };
  SolverConfig cfg;
  cfg.max_box_radius = 100.0;
  const AscentResult r = concave_ascent(f, Vector{0}, cfg);
  EXPECT_TRUE(r.box_limited);
}

TEST(ConcaveAscent, Deterministic) {
  const ConcaveObjective f = [](VectorView y, Vector& g) {
    g.assign(2, 0.0);
    const double a = std::abs(y[0] - 0.3), b = std::abs(y[1] + 0.7);
    g[0] = y[0] > 0.3 ? -1.0 : 1.0;
    g[1] = y[1] > -0.7 ? -2.0 : 2.0;
    return -a - 2.0 * b;
  };
  SolverConfig cfg;
  cfg.seed = 17;
  const AscentResult a = concave_ascent(f, Vector{2, 2}, cfg);
  const AscentResult b = concave_ascent(f, Vector{2, 2}, cfg);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.argmax, b.argmax);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Decomposition, OneSparseTargetUsesFirstBlock) {
  const SourceNorm l2 = SourceNorm::lp(2.0);
  CoordinateNormGauge n1(1, l2), n2(2, l2);
  DecompositionProblem prob;
  prob.x = {1, 0};
  prob.weights = {1.0, 2.0};
  prob.norms = {&n1, &n2};
  prob.budget = 1.0;
  prob.start_block = 1;
  const DecompositionResult r = decomposition_min(prob);
  EXPECT_NEAR(r.value, 1.0, 1e-6);
  EXPECT_NEAR(r.blocks[0][0], 1.0, 1e-4);
  EXPECT_LE(r.sum_residual, 1e-9);
  EXPECT_LE(r.budget_residual, 1e-6);
}

TEST(Decomposition, EqualMagnitudesNeedTheSecondBlock) {
  // For x = (1,1) / sqrt(2) the budget forces most of the mass onto block 2.
  const SourceNorm l2 = SourceNorm::lp(2.0);
  CoordinateNormGauge n1(1, l2), n2(2, l2);
  DecompositionProblem prob;
  const double h = 1.0 / std::sqrt(2.0);
  prob.x = {h, h};
  prob.weights = {1.0, 2.0};
  prob.norms = {&n1, &n2};
  prob.budget = 1.0;
  prob.start_block = 1;
  const DecompositionResult r = decomposition_min(prob);
  EXPECT_NEAR(r.value, 2.0, 1e-5);
  EXPECT_LE(r.lower, r.value + 1e-9);
}

TEST(Decomposition, WithoutBudgetIsAnInfConvolution) {
  // inf { |z1|_1 + |z2|_2 : z1 + z2 = x } = |x|_2 since |.|_2 <= |.|_1.
  LpGauge l1(1.0), l2(2.0);
  DecompositionProblem prob;
  prob.x = {3, -1};
  prob.weights = {1.0, 1.0};
  prob.norms = {&l1, &l2};
  prob.box_radius = 4.0;
  const DecompositionResult r = decomposition_min(prob);
  EXPECT_NEAR(r.value, std::sqrt(10.0), 1e-6);
}

TEST(GaugeBisection, Examples) {
  const LpGauge l2(2.0);
  const auto in_l2 = [&](VectorView v) { return l2.value(v) <= 1.0; };
  EXPECT_NEAR(gauge_bisection(Vector{2, 0}, in_l2), 2.0, 1e-10);
  EXPECT_EQ(gauge_bisection(Vector{0, 0}, in_l2), 0.0);
  EXPECT_DOUBLE_EQ(gauge_bisection(Vector{2, 0}, l2), 2.0);
  const TopKGauge top1(1, SourceNorm::lp(2.0));
  EXPECT_DOUBLE_EQ(gauge_bisection(Vector{1, 1}, top1), 1.0);
  const auto in_top1 = [&](VectorView v) { return top1.value(v) <= 1.0; };
  EXPECT_NEAR(gauge_bisection(Vector{1, 1}, in_top1), 1.0, 1e-10);
}
