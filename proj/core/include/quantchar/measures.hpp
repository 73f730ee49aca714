#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "quantchar/geometry.hpp"
#include "quantchar/random.hpp"
#include "quantchar/types.hpp"

namespace quantchar {

/// Finitely supported law: sum_k w_k delta_{atoms[k]}.
class DiscreteMeasure {
 public:
  /// Throws InvalidArgument unless atoms is nonempty, weights are nonnegative,
  /// finite and sum to 1 within 1e-12; DimensionMismatch on mixed dimensions.
  DiscreteMeasure(Grid atoms, std::vector<double> weights);

  static DiscreteMeasure uniform_over(Grid atoms);
  static DiscreteMeasure from_values(const std::vector<double>& values,
                                     const std::vector<double>& weights);

  const Grid& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return atoms_.size(); }
  std::size_t dimension() const { return atoms_.front().size(); }

 private:
  Grid atoms_;
  std::vector<double> weights_;
};

/// One of four one-dimensional parametric laws with closed-form moments.
class Analytic1D {
 public:
  enum class Family { dirac, uniform, normal, lognormal };

  static Analytic1D dirac(double c);
  /// Requires a < b.
  static Analytic1D uniform(double a, double b);
  /// Requires s > 0.
  static Analytic1D normal(double m, double s);
  /// Law of exp(m + s Z), Z standard normal; requires s > 0.
  static Analytic1D lognormal(double m, double s);
  /// exp((n/2) Z - n^2/4): unit second moment, mean exp(-n^2/8).
  static Analytic1D unit_second_moment_lognormal(double n);

  Family family() const { return family_; }
  /// (c, 0), (a, b), (m, s) or (m, s) depending on the family.
  std::array<double, 2> parameters() const { return {first_, second_}; }

  double mean() const;
  /// Throws Unsupported for the Dirac family.
  double pdf(double x) const;
  double cdf(double t) const;
  /// Left-continuous inverse of cdf on [0, 1].
  double quantile(double q) const;

  /// Integral over the half-open cell (lower, upper] of |xi - center|^p.
  /// Either bound may be infinite. Closed form for integer p and for the
  /// Dirac and uniform families; adaptive quadrature otherwise.
  double cell_power_moment(double lower, double upper, double center, double p) const;

  /// Integral over (lower, upper] of xi^k, k = 0..64 (closed forms).
  double truncated_moment(int k, double lower, double upper) const;

  /// E (X - strike)_+.
  double call_price(double strike) const;

  double draw(Seed seed, std::uint64_t index) const;

 private:
  Analytic1D(Family family, double first, double second)
      : family_(family), first_(first), second_(second) {}

  // Integral over (lower, upper] of (xi - center)^k.
  double signed_moment(double lower, double upper, double center, int k) const;

  Family family_;
  double first_;
  double second_;
};

/// Law given only through a reproducible sampler: sample i is a pure function
/// of (seed, i).
class SampledMeasure {
 public:
  using Sampler = std::function<Point(Seed, std::uint64_t)>;

  SampledMeasure(std::size_t dimension, Sampler sampler);

  static SampledMeasure standard_gaussian(std::size_t dimension);
  static SampledMeasure of(const Analytic1D& law);
  static SampledMeasure of(const DiscreteMeasure& law);

  std::size_t dimension() const { return dimension_; }
  /// Throws DimensionMismatch if the sampler returns a point of the wrong size.
  Point draw(Seed seed, std::uint64_t index) const;

 private:
  std::size_t dimension_;
  Sampler sampler_;
};

/// A probability measure in any of the three representations.
class Measure {
 public:
  using Representation = std::variant<DiscreteMeasure, Analytic1D, SampledMeasure>;

  Measure(DiscreteMeasure m) : rep_(std::move(m)) {}
  Measure(Analytic1D m) : rep_(m) {}
  Measure(SampledMeasure m) : rep_(std::move(m)) {}

  const Representation& representation() const { return rep_; }
  std::size_t dimension() const;

  const DiscreteMeasure* discrete() const { return std::get_if<DiscreteMeasure>(&rep_); }
  const Analytic1D* analytic() const { return std::get_if<Analytic1D>(&rep_); }
  const SampledMeasure* sampled() const { return std::get_if<SampledMeasure>(&rep_); }

 private:
  Representation rep_;
};

/// Integral of |xi - center|^p. Exact for discrete and analytic laws; throws
/// Unsupported for sampled laws (use moment_mc). Throws NumericalError when the
/// result is not finite.
double moment(const Measure& mu, double p, const Point& center, NormSpec norm = {});

/// Monte Carlo estimate of the same integral from `count` samples.
McEstimate moment_mc(const Measure& mu, double p, const Point& center, std::size_t count,
                     Seed seed, NormSpec norm = {});

/// mu((-inf, t]) for a one-dimensional discrete or analytic law.
double cdf_1d(const Measure& mu, double t);

/// Fraction of `count` samples that are <= t, with its binomial standard error.
McEstimate empirical_cdf_1d(const Measure& mu, double t, std::size_t count, Seed seed);

/// E (X - strike)_+ for a one-dimensional discrete or analytic law.
double call_price(const Measure& mu, double strike);

struct SplitSecondMoment {
  /// Integral over (-inf, mid] of (xi - a)^2.
  double left = 0.0;
  /// Integral over (mid, inf) of (xi - b)^2.
  double right = 0.0;
};

/// Requires a <= b; mid = (a + b) / 2. left + right = e_{2,2}(mu, (a, b))^2.
SplitSecondMoment partial_second_moment_1d(const Measure& mu, double a, double b);

/// Samples 0..n-1 of mu under `seed`.
std::vector<Point> sample(const Measure& mu, std::size_t n, Seed seed);

}  // namespace quantchar
