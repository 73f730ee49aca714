#include <gtest/gtest.h>

#include <cmath>

#include "frozen_values.hpp"
#include "quantchar/error.hpp"
#include "quantchar/experiments.hpp"

namespace quantchar {
namespace {

class Counterexample : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { rows_ = new std::vector<CounterexampleRow>(run_counterexample({})); }
  static void TearDownTestSuite() { delete rows_; }
  static const std::vector<CounterexampleRow>& rows() { return *rows_; }

 private:
  static inline std::vector<CounterexampleRow>* rows_ = nullptr;
};

TEST_F(Counterexample, EightRowsInOrder) {
  ASSERT_EQ(rows().size(), 8u);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(rows()[k].n, k + 1);
}

TEST_F(Counterexample, DiagonalMatchesFrozenLatticeSup) {
  for (const auto& r : rows()) EXPECT_NEAR(r.sup_discrepancy_diag, frozen::kDiagonalLatticeSup[r.n - 1], 1e-12);
}

TEST_F(Counterexample, DiagonalRespectsCorrectedAlgebraicBound) {
  for (const auto& r : rows())
    EXPECT_LE(r.sup_discrepancy_diag, diagonal_sup_bound(std::exp(-static_cast<double>(r.n * r.n) / 8.0)) + 1e-12);
}

TEST_F(Counterexample, GridSupBracketsFrozenLatticeValue) {
  // Polish can only raise the lattice maximum; the gap is 2-Lipschitz, so it
  // stays within one pitch of the lattice value.
  for (const auto& r : rows()) {
    EXPECT_GE(r.sup_discrepancy_grid, frozen::kGridLatticeSup[r.n - 1] - 1e-10);
    EXPECT_LE(r.sup_discrepancy_grid, frozen::kGridLatticeSup[r.n - 1] + 0.25);
  }
}

TEST_F(Counterexample, GridTrendFromThree) {
  for (std::size_t k = 3; k < rows().size(); ++k)
    EXPECT_LE(rows()[k].sup_discrepancy_grid, 1.05 * rows()[k - 1].sup_discrepancy_grid);
}

TEST_F(Counterexample, StrikeCallMatchesFrozenMaximum) {
  for (const auto& r : rows()) EXPECT_NEAR(r.supK_call / frozen::kSupStrikeCall[r.n - 1], 1.0, 1e-9);
  for (const auto& r : rows())
    if (r.n >= 3) {
      EXPECT_LE(r.supK_call, call_sup_bound(static_cast<double>(r.n)));
    }
}

TEST_F(Counterexample, SecondMomentStaysOne) {
  for (const auto& r : rows()) EXPECT_NEAR(r.w2_to_limit_sq, 1.0, 1e-12);
}

TEST_F(Counterexample, ConsecutiveQDistShrinks) {
  EXPECT_EQ(rows()[0].q22_lower_to_prev, 0.0);
  for (std::size_t k = 1; k < rows().size(); ++k) EXPECT_GE(rows()[k].q22_lower_to_prev, 0.0);
  EXPECT_LT(rows()[7].q22_lower_to_prev, rows()[2].q22_lower_to_prev);
}

TEST(CounterexampleHelpers, LimitFunction) {
  EXPECT_DOUBLE_EQ(counterexample_limit({3.0, -0.5, 2.0}), std::sqrt(1.25));
  EXPECT_THROW(counterexample_limit({}), InvalidArgument);
}

TEST(CounterexampleHelpers, ConfigValidation) {
  CounterexampleConfig config;
  config.level = 1;
  EXPECT_THROW(run_counterexample(config), InvalidArgument);
}

TEST(GridLaw, NormalKolmogorovMatchesFrozenOptimum) {
  GridLawConfig config;
  config.seeds = {7};
  const auto rows = run_grid_law(config);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(rows[k].kolmogorov, frozen::kOptimalGridKolmogorov[k], 2e-5);
}

TEST(GridLaw, UniformLimitIsItself) {
  GridLawConfig config;
  config.family = "uniform";
  config.levels = {4, 16};
  config.seeds = {1};
  const auto rows = run_grid_law(config);
  // Evenly spaced midpoints sit at distance 1/(2N) from the uniform CDF; Lloyd
  // stops at its tolerance, slightly short of the fixed point.
  EXPECT_NEAR(rows[0].kolmogorov, 1.0 / 8.0, 1e-5);
  EXPECT_NEAR(rows[1].kolmogorov, 1.0 / 32.0, 1e-5);
}

TEST(GridLaw, KolmogorovDistanceOfKnownSample) {
  EXPECT_NEAR(kolmogorov_distance({0.0}, Analytic1D::normal(0, 1)), 0.5, 1e-15);
  EXPECT_THROW(kolmogorov_distance({}, Analytic1D::normal(0, 1)), InvalidArgument);
  EXPECT_THROW(run_grid_law(GridLawConfig{"cauchy"}), InvalidArgument);
}

TEST(Equivalence, ShrinkingDiracIsTight) {
  const auto rows = run_equivalence({});
  for (const auto& r : rows) {
    EXPECT_NEAR(r.wasserstein, 1.0 / static_cast<double>(r.n), 1e-14);
    EXPECT_LE(r.sup_difference, r.wasserstein + 1e-9);
  }
}

TEST(Equivalence, UniformAndGaussianFamiliesAreDominated) {
  for (const char* family : {"widening-uniform", "normal-variance"}) {
    EquivalenceConfig config;
    config.family = family;
    config.lattice_per_axis = 21;
    const auto rows = run_equivalence(config);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      EXPECT_LE(rows[k].sup_difference, rows[k].wasserstein + 1e-9);
      if (k > 0) {
        EXPECT_LT(rows[k].wasserstein, rows[k - 1].wasserstein);
      }
    }
  }
}

TEST(Equivalence, KnownWassersteinValues) {
  EquivalenceConfig config;
  config.family = "normal-variance";
  config.n_list = {1, 4};
  config.lattice_per_axis = 5;
  const auto rows = run_equivalence(config);
  EXPECT_NEAR(rows[0].wasserstein, std::sqrt(2.0) - 1.0, 1e-8);
  EXPECT_NEAR(rows[1].wasserstein, std::sqrt(1.25) - 1.0, 1e-8);
  config.family = "widening-uniform";
  EXPECT_NEAR(run_equivalence(config)[0].wasserstein, 0.5, 1e-9);
  EXPECT_THROW(equivalence_pair("nope", 1), InvalidArgument);
}

}  // namespace
}  // namespace quantchar
