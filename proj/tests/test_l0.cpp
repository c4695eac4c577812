#include <gtest/gtest.h>

#include <random>

#include "capra/errors.hpp"
#include "capra/l0.hpp"

using namespace capra;

TEST(L0, CountsEntriesAboveTolerance) {
  EXPECT_EQ(l0(Vector{0, 0, 0}), 0u);
  EXPECT_EQ(l0(Vector{0, 5, 0}), 1u);
  EXPECT_EQ(l0(Vector{1e-12, 2, -3}, 1e-9), 2u);
  EXPECT_THROW(l0(Vector{1}, -1.0), InvalidArgument);
}

TEST(Support, OneBasedInterface) {
  EXPECT_EQ(support(Vector{0, 5, 0}).one_based(), (std::vector<std::size_t>{2}));
  EXPECT_EQ(support(Vector{0, 0}).size(), 0u);
  EXPECT_EQ(support(Vector{1, 0, -2}).one_based(), (std::vector<std::size_t>{1, 3}));
}

TEST(SupportSet, RejectsBadIndices) {
  EXPECT_THROW(SupportSet::from_one_based(3, {0}), InvalidArgument);
  EXPECT_THROW(SupportSet::from_one_based(3, {4}), InvalidArgument);
  EXPECT_THROW(SupportSet::from_one_based(3, {2, 1}), InvalidArgument);
  EXPECT_THROW(SupportSet::from_one_based(3, {2, 2}), InvalidArgument);
  EXPECT_TRUE(SupportSet::from_one_based(3, {1, 3}).contains(2));
  EXPECT_FALSE(SupportSet::from_one_based(3, {1, 3}).contains(1));
}

TEST(Project, KeepsCoordinatesOfK) {
  EXPECT_EQ(project(Vector{1, 2, 3}, SupportSet::from_one_based(3, {1, 3})), (Vector{1, 0, 3}));
  EXPECT_EQ(project(Vector{1, 2}, SupportSet::empty(2)), (Vector{0, 0}));
  EXPECT_EQ(project(Vector{4, -1}, SupportSet::full(2)), (Vector{4, -1}));
  EXPECT_THROW(project(Vector{1, 2}, SupportSet::full(3)), DimensionMismatch);
}

TEST(LevelSet, Membership) {
  EXPECT_TRUE(level_set_contains(Vector{0, 5, 0}, 1));
  EXPECT_FALSE(level_set_contains(Vector{1, 1, 1}, 2));
  EXPECT_TRUE(level_set_contains(Vector{0, 0, 0}, 0));
  EXPECT_THROW(level_set_contains(Vector{1, 1}, 3), InvalidArgument);
}

class L0Properties : public ::testing::Test {
 protected:
  Vector random_sparse(std::size_t d) {
    std::uniform_real_distribution<double> u(-2, 2);
    Vector v(d);
    for (double& x : v) x = coin(rng) ? 0.0 : u(rng);
    return v;
  }
  std::mt19937_64 rng{5};
  std::bernoulli_distribution coin{0.4};
};

TEST_F(L0Properties, ZeroHomogeneous) {
  for (int t = 0; t < 200; ++t) {
    const Vector x = random_sparse(6);
    for (double rho : {0.5, -0.5, 3.0, -3.0}) EXPECT_EQ(l0(scaled(x, rho)), l0(x));
  }
}

TEST_F(L0Properties, Subadditive) {
  for (int t = 0; t < 200; ++t) {
    const Vector x = random_sparse(7), y = random_sparse(7);
    EXPECT_LE(l0(add(x, y)), l0(x) + l0(y));
  }
}

TEST_F(L0Properties, LevelSetIsUnionOfCoordinateSubspaces) {
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 1 + t % 8;
    const Vector x = random_sparse(d);
    for (std::size_t k = 0; k <= d; ++k) {
      bool found = false;
      for (std::uint32_t mask = 0; mask < (1u << d) && !found; ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) > k) continue;
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < d; ++j) {
          if ((mask >> j) & 1u) idx.push_back(j);
        }
        found = project(x, SupportSet(d, idx)) == x;
      }
      EXPECT_EQ(found, level_set_contains(x, k));
    }
  }
}

TEST_F(L0Properties, ProjectionIdempotentAndSelfDual) {
  for (int t = 0; t < 100; ++t) {
    const Vector x = random_sparse(5), y = random_sparse(5);
    const SupportSet K = support(random_sparse(5));
    EXPECT_EQ(project(project(x, K), K), project(x, K));
    EXPECT_NEAR(dot(project(x, K), y), dot(x, project(y, K)), 1e-12);
  }
}
