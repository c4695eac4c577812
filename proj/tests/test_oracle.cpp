#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "capra/errors.hpp"
#include "capra/oracle.hpp"

using namespace capra;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const SourceNorm L2 = SourceNorm::lp(2.0);
}  // namespace

TEST(GridSpec, Validation) {
  GridSpec g{-1.0, 1.0, 0.5, 2};
  EXPECT_NO_THROW(g.validate());
  EXPECT_EQ(g.points_per_axis(), 5u);
  EXPECT_EQ(g.size(), 25u);
  EXPECT_EQ(g.point(0), (Vector{-1.0, -1.0}));
  EXPECT_EQ(g.point(24), (Vector{1.0, 1.0}));
  EXPECT_THROW((GridSpec{1.0, -1.0, 0.5, 2}.validate()), InvalidArgument);
  EXPECT_THROW((GridSpec{-1.0, 1.0, 0.0, 2}.validate()), InvalidArgument);
  EXPECT_THROW((GridSpec{-1.0, 1.0, 0.5, 4}.validate()), InvalidArgument);
  EXPECT_THROW((GridSpec{-1.0, 1.0, 1e-4, 3}.validate()), InvalidArgument);
}

TEST(SubsetOracle, Examples) {
  EXPECT_DOUBLE_EQ(dual_norm_by_subsets(Vector{3, -1, 2}, 2, SourceNorm::lp(kInf)), 5.0);
  EXPECT_DOUBLE_EQ(dual_norm_by_subsets(Vector{3, 4}, 2, L2), 5.0);
  EXPECT_EQ(dual_norm_by_subsets(Vector{0, 0, 0}, 2, L2), 0.0);
  EXPECT_THROW(dual_norm_by_subsets(Vector(21, 1.0), 2, L2), InvalidArgument);
}

TEST(Legendre, HalfQuadraticIsSelfConjugate) {
  const SampledFunction f =
      sample_on_grid({-3.0, 3.0, 0.05, 2}, [](VectorView v) { return 0.5 * dot(v, v); });
  const SampledFunction c = legendre_on_grid(f, {-1.0, 1.0, 0.1, 2});
  double err = 0.0;
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    err = std::max(err, std::abs(c.values[i] - 0.5 * dot(c.points[i], c.points[i])));
  }
  EXPECT_LE(err, 0.01);
}

TEST(Legendre, BallIndicatorGivesEuclideanNorm) {
  const SampledFunction f = sample_on_grid(
      {-1.2, 1.2, 0.01, 2}, [](VectorView v) { return lp_norm(v, 2.0) <= 1.0 ? 0.0 : kInf; });
  for (const Vector& y : {Vector{1, 0}, Vector{0.3, -0.4}, Vector{2, 2}}) {
    EXPECT_NEAR(legendre_at(f, y), lp_norm(y, 2.0), 0.02 * (1 + lp_norm(y, 2.0)));
    EXPECT_LE(legendre_at(f, y), lp_norm(y, 2.0) + 1e-12);
  }
}

TEST(Legendre, ZeroFunctionGivesSpike) {
  const SampledFunction f = sample_on_grid({-5.0, 5.0, 0.5, 1}, [](VectorView) { return 0.0; });
  EXPECT_EQ(legendre_at(f, Vector{0}), 0.0);
  EXPECT_DOUBLE_EQ(legendre_at(f, Vector{1}), 5.0);
  EXPECT_DOUBLE_EQ(legendre_at(f, Vector{-2}), 10.0);
}

TEST(SampledAtoms, Examples) {
  const Bracket b1 = gauge_by_sampled_atoms(Vector{1, 1}, 1, L2, 10000, 1);
  EXPECT_TRUE(b1.contains(2.0, 1e-9));
  EXPECT_LE(b1.width(), 0.01);

  for (std::size_t k = 1; k <= 3; ++k) {
    EXPECT_TRUE(gauge_by_sampled_atoms(Vector{1, 0, 0}, k, L2, 500, 2).contains(1.0, 1e-9));
  }
  const Bracket b2 = gauge_by_sampled_atoms(Vector{1, 1}, 2, L2, 2000, 3);
  EXPECT_TRUE(b2.contains(std::sqrt(2.0), 1e-9));
}

TEST(SampledAtoms, ContainsTheSolverValue) {
  const Vector x{0.5, -1.0, 0.25, 2.0};
  for (double p : {1.5, 2.0, 3.0}) {
    const SourceNorm src = SourceNorm::lp(p);
    for (std::size_t k = 1; k <= 4; ++k) {
      const Bracket b = gauge_by_sampled_atoms(x, k, src, 3000, 7);
      EXPECT_TRUE(b.contains(coordinate_norm(x, k, src), 1e-7)) << "p=" << p << " k=" << k;
    }
  }
  EXPECT_THROW(gauge_by_sampled_atoms(Vector(5, 1.0), 2, L2, 100, 1), InvalidArgument);
}
