#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "quantchar/error.hpp"
#include "quantchar/measures.hpp"
#include "quantchar/quanterror.hpp"

namespace quantchar {
namespace {

// Density and support used by the Simpson oracle; independent of Analytic1D::pdf.
struct DensityRef {
  std::function<double(double)> pdf;
  double lo;
  double hi;
};

DensityRef normal_ref(double m, double s) {
  return {[=](double x) { return oracle::gaussian_pdf((x - m) / s) / s; }, m - 14.0 * s, m + 14.0 * s};
}

DensityRef lognormal_ref(double m, double s) {
  return {[=](double x) { return x <= 0.0 ? 0.0 : oracle::gaussian_pdf((std::log(x) - m) / s) / (s * x); },
          0.0, std::exp(m + 12.0 * s)};
}

TEST(Measures, DiscreteValidation) {
  EXPECT_THROW(DiscreteMeasure(Grid{}, {}), InvalidArgument);
  EXPECT_THROW(DiscreteMeasure(grid_1d({0.0, 1.0}), {0.5}), InvalidArgument);
  EXPECT_THROW(DiscreteMeasure(grid_1d({0.0, 1.0}), {0.7, 0.7}), InvalidArgument);
  EXPECT_THROW(DiscreteMeasure(grid_1d({0.0, 1.0}), {1.5, -0.5}), InvalidArgument);
  EXPECT_THROW(DiscreteMeasure((Grid{{0.0}, {1.0, 2.0}}), {0.5, 0.5}), DimensionMismatch);
  EXPECT_NO_THROW(DiscreteMeasure(grid_1d({0.0, 1.0}), {0.25, 0.75}));
}

TEST(Measures, AnalyticValidation) {
  EXPECT_THROW(Analytic1D::uniform(1.0, 1.0), InvalidArgument);
  EXPECT_THROW(Analytic1D::normal(0.0, 0.0), InvalidArgument);
  EXPECT_THROW(Analytic1D::lognormal(0.0, -1.0), InvalidArgument);
  EXPECT_THROW(Analytic1D::dirac(NAN), InvalidArgument);
}

TEST(Moment, WorkedValues) {
  EXPECT_NEAR(moment(Analytic1D::unit_second_moment_lognormal(2), 1.0, {0.0}), std::exp(-0.5), 1e-15);
  EXPECT_EQ(moment(Analytic1D::dirac(0.0), 2.0, {0.0}), 0.0);
  EXPECT_NEAR(moment(Analytic1D::uniform(0.0, 1.0), 2.0, {0.0}), 1.0 / 3.0, 1e-15);
}

TEST(Moment, LognormalFamilyClosedForm) {
  for (int n = 1; n <= 8; ++n) {
    const Measure mu = Analytic1D::unit_second_moment_lognormal(n);
    EXPECT_NEAR(moment(mu, 1.0, {0.0}) / std::exp(-n * n / 8.0), 1.0, 1e-12);
    EXPECT_NEAR(moment(mu, 2.0, {0.0}), 1.0, 1e-12);
  }
}

TEST(Moment, AnalyticMatchesSimpsonForFractionalPowers) {
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) {
    for (double c : {-0.7, 0.0, 1.3}) {
      const auto ref = normal_ref(0.4, 1.2);
      const double expected = oracle::piecewise_simpson(
          [&](double x) { return std::pow(std::abs(x - c), p) * ref.pdf(x); }, ref.lo, ref.hi, {c}, 20000);
      EXPECT_NEAR(moment(Analytic1D::normal(0.4, 1.2), p, {c}), expected, 1e-9 * (1.0 + expected)) << p << " " << c;
    }
  }
}

TEST(Moment, DiscreteIsWeightedSum) {
  const DiscreteMeasure mu(Grid{{0.0, 0.0}, {3.0, 4.0}}, {0.25, 0.75});
  EXPECT_DOUBLE_EQ(moment(mu, 1.0, {0.0, 0.0}), 3.75);
  EXPECT_DOUBLE_EQ(moment(mu, 1.0, {0.0, 0.0}, NormSpec(1.0)), 5.25);
  EXPECT_THROW(moment(mu, 1.0, {0.0}), DimensionMismatch);
}

TEST(Moment, SampledRequiresExplicitMonteCarlo) {
  const Measure mu = SampledMeasure::standard_gaussian(2);
  EXPECT_THROW(moment(mu, 2.0, {0.0, 0.0}), Unsupported);
  const auto est = moment_mc(mu, 2.0, {0.0, 0.0}, 200000, Seed{1});
  EXPECT_NEAR(est.value, 2.0, 4.0 * est.std_error);
  EXPECT_GT(est.std_error, 0.0);
  EXPECT_EQ(est.samples, 200000u);
}

TEST(Cdf, WorkedValues) {
  EXPECT_NEAR(cdf_1d(Analytic1D::uniform(0.0, 1.0), 0.3), 0.3, 1e-15);
  EXPECT_NEAR(cdf_1d(Analytic1D::normal(0.0, 1.0), 0.0), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(cdf_1d(DiscreteMeasure::from_values({0.0, 1.0}, {0.5, 0.5}), 0.0), 0.5);
}

TEST(Cdf, LimitsAtInfinity) {
  for (const Measure& mu : {Measure(Analytic1D::normal(2.0, 3.0)), Measure(Analytic1D::lognormal(-1.0, 2.0)),
                            Measure(Analytic1D::uniform(-5.0, 5.0)), Measure(Analytic1D::dirac(4.0))}) {
    EXPECT_NEAR(cdf_1d(mu, -1e6), 0.0, 1e-15);
    // lognormal(-1, 2) still has 6e-14 of mass beyond 1e6
    EXPECT_NEAR(cdf_1d(mu, 1e6), 1.0, 1e-12);
  }
}

TEST(Cdf, DiracIsRightContinuous) {
  EXPECT_EQ(cdf_1d(Analytic1D::dirac(1.0), 1.0), 1.0);
  EXPECT_EQ(cdf_1d(Analytic1D::dirac(1.0), std::nextafter(1.0, 0.0)), 0.0);
}

TEST(Cdf, SamplerNeedsEmpiricalVariant) {
  const Measure mu = SampledMeasure::of(Analytic1D::normal(0.0, 1.0));
  EXPECT_THROW(cdf_1d(mu, 0.0), Unsupported);
  const auto est = empirical_cdf_1d(mu, 1.0, 100000, Seed{2});
  EXPECT_NEAR(est.value, oracle::gaussian_cdf(1.0), 4.0 * est.std_error);
}

TEST(Quantile, InvertsCdf) {
  for (const auto& law : {Analytic1D::normal(-1.0, 0.5), Analytic1D::lognormal(0.3, 0.8), Analytic1D::uniform(2.0, 7.0)}) {
    for (double q : {0.001, 0.1, 0.5, 0.77, 0.999}) EXPECT_NEAR(law.cdf(law.quantile(q)), q, 1e-12);
  }
  EXPECT_THROW(Analytic1D::normal(0, 1).quantile(1.5), InvalidArgument);
}

TEST(CallPrice, WorkedValues) {
  EXPECT_NEAR(call_price(Analytic1D::unit_second_moment_lognormal(2), 0.0), std::exp(-0.5), 1e-14);
  EXPECT_EQ(call_price(Analytic1D::dirac(1.0), 2.0), 0.0);
  EXPECT_NEAR(call_price(Analytic1D::uniform(0.0, 1.0), 0.5), 0.125, 1e-15);
}

TEST(CallPrice, LognormalMatchesSimpson) {
  // Integrated in log space, where the density is a plain Gaussian.
  const double m = -0.5, s = 0.9;
  for (double k : {0.05, 0.4, 1.0, 2.5}) {
    const double expected = oracle::piecewise_simpson(
        [&](double y) { return std::max(std::exp(y) - k, 0.0) * oracle::gaussian_pdf((y - m) / s) / s; },
        m - 14.0 * s, m + 14.0 * s, {std::log(k)}, 40000);
    EXPECT_NEAR(call_price(Analytic1D::lognormal(-0.5, 0.9), k), expected, 1e-8);
  }
}

TEST(CallPrice, NormalAndDiscreteMatchDirectSums) {
  const auto ref = normal_ref(0.2, 0.7);
  const double expected = oracle::piecewise_simpson([&](double x) { return std::max(x - 0.5, 0.0) * ref.pdf(x); },
                                                    ref.lo, ref.hi, {0.5}, 40000);
  EXPECT_NEAR(call_price(Analytic1D::normal(0.2, 0.7), 0.5), expected, 1e-10);
  const auto mu = DiscreteMeasure::from_values({-1.0, 0.5, 2.0}, {0.2, 0.3, 0.5});
  EXPECT_NEAR(call_price(mu, 0.0), 0.3 * 0.5 + 0.5 * 2.0, 1e-15);
}

TEST(CallPrice, NonincreasingInStrikeAndTendsToMean) {
  for (const auto& law : {Analytic1D::lognormal(-1.0, 1.0), Analytic1D::normal(0.0, 2.0), Analytic1D::uniform(-1.0, 3.0)}) {
    double previous = INFINITY;
    for (double k = -20.0; k <= 20.0; k += 0.125) {
      const double c = law.call_price(k);
      EXPECT_LE(c, previous + 1e-14);
      EXPECT_GE(c, 0.0);
      previous = c;
    }
    EXPECT_NEAR(law.call_price(-1e4), law.mean() + 1e4, 1e-8);
  }
}

TEST(TruncatedMoment, MatchesSimpsonOnBoundedCells) {
  const Analytic1D normal = Analytic1D::normal(0.3, 1.1);
  const Analytic1D lognormal = Analytic1D::lognormal(-0.2, 0.6);
  const auto nref = normal_ref(0.3, 1.1);
  const auto lref = lognormal_ref(-0.2, 0.6);
  for (int k = 0; k <= 6; ++k) {
    const double en = oracle::simpson([&](double x) { return std::pow(x, k) * nref.pdf(x); }, -0.8, 1.9, 4000);
    EXPECT_NEAR(normal.truncated_moment(k, -0.8, 1.9), en, 1e-12 * (1.0 + std::abs(en)));
    const double el = oracle::simpson([&](double x) { return std::pow(x, k) * lref.pdf(x); }, 0.4, 2.2, 4000);
    EXPECT_NEAR(lognormal.truncated_moment(k, 0.4, 2.2), el, 1e-12 * (1.0 + std::abs(el)));
  }
}

TEST(CellPowerMoment, MatchesSimpsonAcrossCenters) {
  const Analytic1D law = Analytic1D::normal(0.0, 1.0);
  for (double p : {1.0, 2.0, 4.0, 6.0}) {
    for (double c : {-0.5, 0.1, 0.9}) {
      const double expected = oracle::piecewise_simpson(
          [&](double x) { return std::pow(std::abs(x - c), p) * oracle::gaussian_pdf(x); }, -0.6, 1.2, {c}, 4000);
      EXPECT_NEAR(law.cell_power_moment(-0.6, 1.2, c, p), expected, 1e-12);
    }
  }
}

TEST(PartialSecondMoment, WorkedValues) {
  const auto dirac = partial_second_moment_1d(Analytic1D::dirac(0.0), -1.0, 1.0);
  EXPECT_DOUBLE_EQ(dirac.left, 1.0);
  EXPECT_DOUBLE_EQ(dirac.right, 0.0);
  const auto uni = partial_second_moment_1d(Analytic1D::uniform(0.0, 1.0), 0.25, 0.75);
  EXPECT_NEAR(uni.left, 1.0 / 96.0, 1e-15);
  EXPECT_NEAR(uni.right, 1.0 / 96.0, 1e-15);
  const auto logn = partial_second_moment_1d(Analytic1D::lognormal(0.0, 1.0), 0.0, 0.0);
  EXPECT_EQ(logn.left, 0.0);
  EXPECT_NEAR(logn.right, std::exp(2.0), 1e-12);
  EXPECT_THROW(partial_second_moment_1d(Analytic1D::dirac(0.0), 1.0, -1.0), InvalidArgument);
}

TEST(PartialSecondMoment, SumsToTwoPointError) {
  for (const Measure& mu : {Measure(Analytic1D::normal(0.0, 1.0)), Measure(Analytic1D::lognormal(0.1, 0.5)),
                            Measure(Analytic1D::uniform(-2.0, 1.0))}) {
    for (auto [a, b] : std::vector<std::pair<double, double>>{{-1.0, 0.5}, {0.2, 2.0}, {0.0, 0.0}}) {
      const auto split = partial_second_moment_1d(mu, a, b);
      const double direct = qerr(mu, grid_1d({a, b}), 2.0).value;
      EXPECT_NEAR((split.left + split.right) / (direct * direct), 1.0, 1e-10);
    }
  }
}

TEST(Sample, DiracGivesCopies) {
  for (const auto& x : sample(Analytic1D::dirac(2.5), 17, Seed{9})) EXPECT_EQ(x, Point{2.5});
}

TEST(Sample, DeterministicGivenSeed) {
  const auto a = sample(Analytic1D::normal(0.0, 1.0), 100, Seed{4});
  const auto b = sample(Analytic1D::normal(0.0, 1.0), 100, Seed{4});
  EXPECT_EQ(a, b);
  EXPECT_NE(a, sample(Analytic1D::normal(0.0, 1.0), 100, Seed{5}));
}

TEST(Sample, NormalMeanWithinClt) {
  constexpr std::size_t n = 1000000;
  double total = 0.0;
  for (const auto& x : sample(Analytic1D::normal(0.0, 1.0), n, Seed{1})) total += x[0];
  EXPECT_LT(std::abs(total / n), 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST(Sample, LognormalSecondMomentIsOne) {
  constexpr std::size_t n = 400000;
  std::vector<double> squares;
  squares.reserve(n);
  // E X^2 = exp(2m + 2s^2) = 1 needs m = -s^2.
  for (const auto& x : sample(Analytic1D::lognormal(-1.0, 1.0), n, Seed{7})) squares.push_back(x[0] * x[0]);
  double mean = 0.0;
  for (double v : squares) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : squares) var += (v - mean) * (v - mean);
  const double se = std::sqrt(var / (n - 1) / n);
  EXPECT_LT(std::abs(mean - 1.0), 3.0 * se);
}

TEST(Sample, DiscreteFrequenciesMatchWeights) {
  const auto mu = DiscreteMeasure::from_values({1.0, 2.0, 3.0}, {0.2, 0.5, 0.3});
  constexpr std::size_t n = 100000;
  std::array<double, 3> counts{};
  for (const auto& x : sample(mu, n, Seed{3})) counts[static_cast<std::size_t>(x[0]) - 1] += 1.0;
  EXPECT_NEAR(counts[0] / n, 0.2, 0.006);
  EXPECT_NEAR(counts[1] / n, 0.5, 0.006);
  EXPECT_NEAR(counts[2] / n, 0.3, 0.006);
}

TEST(SampledMeasure, DrawIsPureInSeedAndIndex) {
  const auto mu = SampledMeasure::standard_gaussian(3);
  EXPECT_EQ(mu.draw(Seed{1}, 99), mu.draw(Seed{1}, 99));
  EXPECT_NE(mu.draw(Seed{1}, 99), mu.draw(Seed{1}, 100));
}

}  // namespace
}  // namespace quantchar
