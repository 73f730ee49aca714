#include "quantchar/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "quantchar/error.hpp"
#include "quantchar/numerics.hpp"

namespace quantchar {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Standard normal mass of (alpha, beta], taken from the tail that avoids
// cancellation.
double gaussian_mass(double alpha, double beta) {
  if (!(alpha < beta)) return 0.0;
  if (alpha > 0.0) return normal_sf(alpha) - normal_sf(beta);
  return normal_cdf(beta) - normal_cdf(alpha);
}

// t^k phi(t), vanishing at +-infinity.
double scaled_pdf(double t, int k) {
  if (std::isinf(t)) return 0.0;
  return (k == 0 ? 1.0 : std::pow(t, k)) * normal_pdf(t);
}

// E[Z^j 1{alpha < Z <= beta}] for j = 0..k.
std::vector<double> truncated_gaussian_moments(double alpha, double beta, int k) {
  std::vector<double> t(static_cast<std::size_t>(k) + 1, 0.0);
  if (!(alpha < beta)) return t;
  t[0] = gaussian_mass(alpha, beta);
  if (k >= 1) t[1] = scaled_pdf(alpha, 0) - scaled_pdf(beta, 0);
  for (int j = 2; j <= k; ++j) {
    t[j] = (j - 1) * t[j - 2] + scaled_pdf(alpha, j - 1) - scaled_pdf(beta, j - 1);
  }
  return t;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool is_small_integer(double p) { return p == std::floor(p) && p <= 64.0; }

// Integral of |xi - c|^p over [u, v] against Lebesgue measure.
double lebesgue_power(double u, double v, double c, double p) {
  if (!(u < v)) return 0.0;
  auto piece = [p](double near, double far) {
    return (std::pow(far, p + 1.0) - std::pow(near, p + 1.0)) / (p + 1.0);
  };
  if (u >= c) return piece(u - c, v - c);
  if (v <= c) return piece(c - v, c - u);
  return piece(0.0, v - c) + piece(0.0, c - u);
}

void require_positive_scale(double s, const char* family) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw InvalidArgument(std::string(family) + ": scale must be finite and > 0");
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

void require_analytic_or_discrete_1d(const Measure& mu, const char* op) {
  if (mu.dimension() != 1) throw DimensionMismatch(std::string(op) + ": measure is not 1D");
  if (mu.sampled())
    throw Unsupported(std::string(op) + ": sampler-backed measure; use an empirical estimate");
}

}  // namespace

// ---------------------------------------------------------------------------

DiscreteMeasure::DiscreteMeasure(Grid atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty()) throw InvalidArgument("discrete measure: no atoms");
  checked_dimension(atoms_);
  if (weights_.size() != atoms_.size())
    throw InvalidArgument("discrete measure: atoms and weights differ in length");
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw InvalidArgument("discrete measure: weights must be finite and nonnegative");
  }
  const double total = pairwise_sum(weights_);
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidArgument("discrete measure: weights sum to " + std::to_string(total));
}

DiscreteMeasure DiscreteMeasure::uniform_over(Grid atoms) {
  const std::size_t n = atoms.size();
  if (n == 0) throw InvalidArgument("discrete measure: no atoms");
  return DiscreteMeasure(std::move(atoms), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteMeasure DiscreteMeasure::from_values(const std::vector<double>& values,
                                             const std::vector<double>& weights) {
  return DiscreteMeasure(grid_1d(values), weights);
}

// ---------------------------------------------------------------------------

Analytic1D Analytic1D::dirac(double c) {
  require_finite(c, "dirac location");
  return {Family::dirac, c, 0.0};
}

Analytic1D Analytic1D::uniform(double a, double b) {
  require_finite(a, "uniform bound");
  require_finite(b, "uniform bound");
  if (!(a < b)) throw InvalidArgument("uniform: requires a < b");
  return {Family::uniform, a, b};
}

Analytic1D Analytic1D::normal(double m, double s) {
  require_finite(m, "normal mean");
  require_positive_scale(s, "normal");
  return {Family::normal, m, s};
}

Analytic1D Analytic1D::lognormal(double m, double s) {
  require_finite(m, "lognormal location");
  require_positive_scale(s, "lognormal");
  return {Family::lognormal, m, s};
}

Analytic1D Analytic1D::unit_second_moment_lognormal(double n) {
  if (!(n > 0.0)) throw InvalidArgument("unit_second_moment_lognormal: n must be > 0");
  return lognormal(-n * n / 4.0, n / 2.0);
}

double Analytic1D::mean() const {
  switch (family_) {
    case Family::dirac: return first_;
    case Family::uniform: return 0.5 * (first_ + second_);
    case Family::normal: return first_;
    case Family::lognormal: return std::exp(first_ + 0.5 * second_ * second_);
  }
  return 0.0;
}

double Analytic1D::pdf(double x) const {
  switch (family_) {
    case Family::dirac: throw Unsupported("pdf: Dirac law has no density");
    case Family::uniform: return (x >= first_ && x <= second_) ? 1.0 / (second_ - first_) : 0.0;
    case Family::normal: return normal_pdf((x - first_) / second_) / second_;
    case Family::lognormal:
      if (x <= 0.0) return 0.0;
      return normal_pdf((std::log(x) - first_) / second_) / (second_ * x);
  }
  return 0.0;
}

double Analytic1D::cdf(double t) const {
  switch (family_) {
    case Family::dirac: return t >= first_ ? 1.0 : 0.0;
    case Family::uniform: return std::clamp((t - first_) / (second_ - first_), 0.0, 1.0);
    case Family::normal: return normal_cdf((t - first_) / second_);
    case Family::lognormal: return t <= 0.0 ? 0.0 : normal_cdf((std::log(t) - first_) / second_);
  }
  return 0.0;
}

double Analytic1D::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("quantile: probability outside [0, 1]");
  switch (family_) {
    case Family::dirac: return first_;
    case Family::uniform: return first_ + q * (second_ - first_);
    case Family::normal: return first_ + second_ * normal_quantile(q);
    case Family::lognormal: return std::exp(first_ + second_ * normal_quantile(q));
  }
  return 0.0;
}

double Analytic1D::cell_power_moment(double lower, double upper, double center, double p) const {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("power must be finite and >= 1");
  if (std::isnan(lower) || std::isnan(upper) || !std::isfinite(center))
    throw InvalidArgument("cell_power_moment: invalid cell or center");
  if (!(lower < upper)) return 0.0;

  switch (family_) {
    case Family::dirac:
      return (lower < first_ && first_ <= upper) ? std::pow(std::abs(first_ - center), p) : 0.0;
    case Family::uniform: {
      const double u = std::max(lower, first_);
      const double v = std::min(upper, second_);
      return lebesgue_power(u, v, center, p) / (second_ - first_);
    }
    case Family::normal:
    case Family::lognormal:
      break;
  }

  if (is_small_integer(p)) {
    const int k = static_cast<int>(p);
    if (k % 2 == 0) return signed_moment(lower, upper, center, k);
    // Odd power: split at the center so the integrand keeps one sign.
    return signed_moment(std::max(lower, center), upper, center, k) -
           signed_moment(lower, std::min(upper, center), center, k);
  }

  // Non-integer power: quadrature of the density on each side of the center.
  double lo = lower;
  if (family_ == Family::lognormal) lo = std::max(lo, 0.0);
  auto integrand = [&](double x) { return std::pow(std::abs(x - center), p) * pdf(x); };
  double total = 0.0;
  const double split = std::clamp(center, lo, upper);
  total += integrate(integrand, lo, split, 1e-12).value;
  total += integrate(integrand, split, upper, 1e-12).value;
  return total;
}

double Analytic1D::signed_moment(double lower, double upper, double center, int k) const {
  if (!(lower < upper)) return 0.0;
  const double m = first_;
  const double s = second_;
  switch (family_) {
    case Family::dirac:
      return (lower < m && m <= upper) ? std::pow(m - center, k) : 0.0;
    case Family::uniform: {
      const double u = std::max(lower, first_);
      const double v = std::min(upper, second_);
      if (!(u < v)) return 0.0;
      return (std::pow(v - center, k + 1) - std::pow(u - center, k + 1)) /
             ((k + 1) * (second_ - first_));
    }
    case Family::normal: {
      const auto t = truncated_gaussian_moments((lower - m) / s, (upper - m) / s, k);
      const double offset = m - center;
      double sum = 0.0;
      for (int j = 0; j <= k; ++j)
        sum += binomial(k, j) * std::pow(offset, k - j) * std::pow(s, j) * t[j];
      return sum;
    }
    case Family::lognormal: {
      if (upper <= 0.0) return 0.0;
      const double log_lo = lower <= 0.0 ? -kInf : std::log(lower);
      const double log_hi = std::log(upper);
      double sum = 0.0;
      for (int j = 0; j <= k; ++j) {
        const double shift = m + j * s * s;
        const double raw = std::exp(j * m + 0.5 * j * j * s * s) *
                           gaussian_mass((log_lo - shift) / s, (log_hi - shift) / s);
        sum += binomial(k, j) * std::pow(-center, k - j) * raw;
      }
      return sum;
    }
  }
  return 0.0;
}

double Analytic1D::truncated_moment(int k, double lower, double upper) const {
  if (k < 0 || k > 64) throw InvalidArgument("truncated_moment: k must be in 0..64");
  if (std::isnan(lower) || std::isnan(upper)) throw InvalidArgument("truncated_moment: NaN bound");
  return signed_moment(lower, upper, 0.0, k);
}

double Analytic1D::call_price(double strike) const {
  if (!std::isfinite(strike)) throw InvalidArgument("call_price: strike must be finite");
  return cell_power_moment(strike, kInf, strike, 1.0);
}

double Analytic1D::draw(Seed seed, std::uint64_t index) const {
  CounterRng rng(seed, index);
  switch (family_) {
    case Family::dirac: return first_;
    case Family::uniform: return first_ + (second_ - first_) * rng.uniform();
    case Family::normal: return first_ + second_ * rng.normal();
    case Family::lognormal: return std::exp(first_ + second_ * rng.normal());
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

SampledMeasure::SampledMeasure(std::size_t dimension, Sampler sampler)
    : dimension_(dimension), sampler_(std::move(sampler)) {
  if (dimension_ == 0) throw InvalidArgument("sampled measure: dimension must be >= 1");
  if (!sampler_) throw InvalidArgument("sampled measure: empty sampler");
}

SampledMeasure SampledMeasure::standard_gaussian(std::size_t dimension) {
  return SampledMeasure(dimension, [dimension](Seed seed, std::uint64_t index) {
    CounterRng rng(seed, index);
    Point p(dimension);
    for (auto& c : p) c = rng.normal();
    return p;
  });
}

SampledMeasure SampledMeasure::of(const Analytic1D& law) {
  return SampledMeasure(1, [law](Seed seed, std::uint64_t index) {
    return Point{law.draw(seed, index)};
  });
}

SampledMeasure SampledMeasure::of(const DiscreteMeasure& law) {
  std::vector<double> cumulative(law.size());
  double running = 0.0;
  for (std::size_t k = 0; k < law.size(); ++k) {
    running += law.weights()[k];
    cumulative[k] = running;
  }
  return SampledMeasure(law.dimension(), [law, cumulative](Seed seed, std::uint64_t index) {
    CounterRng rng(seed, index);
    const double u = rng.uniform() * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t k = static_cast<std::size_t>(it - cumulative.begin());
    if (k >= law.size()) k = law.size() - 1;
    return law.atoms()[k];
  });
}

Point SampledMeasure::draw(Seed seed, std::uint64_t index) const {
  Point p = sampler_(seed, index);
  if (p.size() != dimension_) throw DimensionMismatch("sampler returned a point of wrong size");
  return p;
}

std::size_t Measure::dimension() const {
  return std::visit(
      [](const auto& m) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, Analytic1D>) {
          return 1;
        } else {
          return m.dimension();
        }
      },
      rep_);
}

// ---------------------------------------------------------------------------

double moment(const Measure& mu, double p, const Point& center, NormSpec norm) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("moment: p must be finite and >= 1");
  if (center.size() != mu.dimension()) throw DimensionMismatch("moment: center dimension");
  double result = 0.0;
  if (const auto* d = mu.discrete()) {
    std::vector<double> terms(d->size());
    for (std::size_t k = 0; k < d->size(); ++k)
      terms[k] = d->weights()[k] * std::pow(distance(d->atoms()[k], center, norm), p);
    result = pairwise_sum(terms);
  } else if (const auto* a = mu.analytic()) {
    result = a->cell_power_moment(-kInf, kInf, center[0], p);
  } else {
    throw Unsupported("moment: sampler-backed measure; use moment_mc with a count and seed");
  }
  if (!std::isfinite(result)) throw NumericalError("moment: result is not finite");
  return result;
}

McEstimate moment_mc(const Measure& mu, double p, const Point& center, std::size_t count,
                     Seed seed, NormSpec norm) {
  if (count < 2) throw InvalidArgument("moment_mc: need at least 2 samples");
  if (center.size() != mu.dimension()) throw DimensionMismatch("moment_mc: center dimension");
  const auto points = sample(mu, count, seed);
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) values[k] = std::pow(distance(points[k], center, norm), p);
  const double n = static_cast<double>(count);
  const double mean = pairwise_sum(values) / n;
  for (auto& v : values) v = (v - mean) * (v - mean);
  const double variance = pairwise_sum(values) / (n - 1.0);
  if (!std::isfinite(mean) || !std::isfinite(variance))
    throw NumericalError("moment_mc: non-finite estimate (moment may diverge)");
  return {mean, std::sqrt(variance / n), count, seed};
}

double cdf_1d(const Measure& mu, double t) {
  require_analytic_or_discrete_1d(mu, "cdf_1d");
  if (std::isnan(t)) throw InvalidArgument("cdf_1d: t is NaN");
  if (const auto* a = mu.analytic()) return a->cdf(t);
  const auto& d = *mu.discrete();
  std::vector<double> included;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (d.atoms()[k][0] <= t) included.push_back(d.weights()[k]);
  return std::min(1.0, pairwise_sum(included));
}

McEstimate empirical_cdf_1d(const Measure& mu, double t, std::size_t count, Seed seed) {
  if (mu.dimension() != 1) throw DimensionMismatch("empirical_cdf_1d: measure is not 1D");
  if (count < 1) throw InvalidArgument("empirical_cdf_1d: need at least one sample");
  const auto points = sample(mu, count, seed);
  std::size_t below = 0;
  for (const auto& x : points) below += x[0] <= t ? 1 : 0;
  const double n = static_cast<double>(count);
  const double f = static_cast<double>(below) / n;
  return {f, std::sqrt(f * (1.0 - f) / n), count, seed};
}

double call_price(const Measure& mu, double strike) {
  require_analytic_or_discrete_1d(mu, "call_price");
  if (const auto* a = mu.analytic()) return a->call_price(strike);
  const auto& d = *mu.discrete();
  std::vector<double> terms(d.size());
  for (std::size_t k = 0; k < d.size(); ++k)
    terms[k] = d.weights()[k] * std::max(d.atoms()[k][0] - strike, 0.0);
  return pairwise_sum(terms);
}

SplitSecondMoment partial_second_moment_1d(const Measure& mu, double a, double b) {
  require_analytic_or_discrete_1d(mu, "partial_second_moment_1d");
  if (!(a <= b)) throw InvalidArgument("partial_second_moment_1d: requires a <= b");
  const double mid = 0.5 * (a + b);
  if (const auto* an = mu.analytic()) {
    return {an->cell_power_moment(-kInf, mid, a, 2.0), an->cell_power_moment(mid, kInf, b, 2.0)};
  }
  const auto& d = *mu.discrete();
  std::vector<double> left;
  std::vector<double> right;
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double x = d.atoms()[k][0];
    if (x <= mid) {
      left.push_back(d.weights()[k] * (x - a) * (x - a));
    } else {
      right.push_back(d.weights()[k] * (x - b) * (x - b));
    }
  }
  return {pairwise_sum(left), pairwise_sum(right)};
}

std::vector<Point> sample(const Measure& mu, std::size_t n, Seed seed) {
  if (n == 0) throw InvalidArgument("sample: n must be >= 1");
  std::vector<Point> out;
  out.reserve(n);
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SampledMeasure>) {
          for (std::size_t i = 0; i < n; ++i) out.push_back(m.draw(seed, i));
        } else {
          const SampledMeasure sampler = SampledMeasure::of(m);
          for (std::size_t i = 0; i < n; ++i) out.push_back(sampler.draw(seed, i));
        }
      },
      mu.representation());
  return out;
}

}  // namespace quantchar
