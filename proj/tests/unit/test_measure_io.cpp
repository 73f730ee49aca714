#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "quantchar/error.hpp"
#include "quantchar/measure_io.hpp"

namespace quantchar {
namespace {

TEST(MeasureIo, AnalyticKinds) {
  const Measure dirac = measure_from_json(R"({"kind": "dirac", "params": {"c": 2.5}})");
  ASSERT_NE(dirac.analytic(), nullptr);
  EXPECT_EQ(dirac.analytic()->family(), Analytic1D::Family::dirac);
  const Measure uni = measure_from_json(R"({"kind": "uniform", "params": {"a": 0, "b": 2}})");
  EXPECT_DOUBLE_EQ(uni.analytic()->mean(), 1.0);
  const Measure normal = measure_from_json(R"({"kind": "normal", "params": {"m": 1, "s": 3}})");
  EXPECT_EQ(normal.analytic()->parameters(), (std::array<double, 2>{1.0, 3.0}));
  const Measure logn = measure_from_json(R"({"kind": "lognormal", "params": {"m": -1, "s": 0.5}})");
  EXPECT_EQ(logn.analytic()->family(), Analytic1D::Family::lognormal);
}

TEST(MeasureIo, DiscreteWithAndWithoutWeights) {
  const Measure a = measure_from_json(R"({"kind": "discrete", "atoms": [0, 1, 3]})");
  ASSERT_NE(a.discrete(), nullptr);
  EXPECT_EQ(a.discrete()->size(), 3u);
  EXPECT_NEAR(a.discrete()->weights()[2], 1.0 / 3.0, 1e-15);
  const Measure b = measure_from_json(R"({"kind": "discrete", "atoms": [[0, 0], [1, 2]], "weights": [0.25, 0.75]})");
  EXPECT_EQ(b.dimension(), 2u);
  EXPECT_DOUBLE_EQ(b.discrete()->weights()[1], 0.75);
}

TEST(MeasureIo, Errors) {
  EXPECT_THROW(measure_from_json("{not json"), InvalidArgument);
  EXPECT_THROW(measure_from_json(R"({"params": {}})"), InvalidArgument);
  EXPECT_THROW(measure_from_json(R"({"kind": "cauchy", "params": {}})"), InvalidArgument);
  EXPECT_THROW(measure_from_json(R"({"kind": "normal", "params": {"m": 0}})"), InvalidArgument);
  EXPECT_THROW(measure_from_json(R"({"kind": "uniform", "params": {"a": 1, "b": 0}})"), InvalidArgument);
  EXPECT_THROW(measure_from_json(R"({"kind": "discrete", "atoms": [0, 1], "weights": [0.5]})"), InvalidArgument);
  EXPECT_THROW(load_measure("/nonexistent/measure.json"), InvalidArgument);
}

TEST(MeasureIo, RoundTrip) {
  for (const Measure& mu : {Measure(Analytic1D::normal(0.5, 2.0)), Measure(Analytic1D::uniform(-1, 1)),
                            Measure(DiscreteMeasure(Grid{{0.0, 1.0}, {2.0, 3.0}}, {0.4, 0.6}))}) {
    const Measure back = measure_from_json(measure_to_json(mu));
    EXPECT_EQ(back.dimension(), mu.dimension());
    if (mu.analytic()) {
      EXPECT_EQ(back.analytic()->parameters(), mu.analytic()->parameters());
    }
    if (mu.discrete()) {
      EXPECT_EQ(back.discrete()->atoms(), mu.discrete()->atoms());
      EXPECT_EQ(back.discrete()->weights(), mu.discrete()->weights());
    }
  }
  EXPECT_THROW(measure_to_json(SampledMeasure::standard_gaussian(1)), Unsupported);
}

TEST(MeasureIo, LoadsFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "quantchar_measure_io_test.json";
  std::ofstream(path) << R"({"kind": "normal", "params": {"m": 0, "s": 1}})";
  EXPECT_EQ(load_measure(path).analytic()->family(), Analytic1D::Family::normal);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace quantchar
