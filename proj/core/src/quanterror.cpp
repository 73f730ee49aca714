#include "quantchar/quanterror.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quantchar/error.hpp"
#include "quantchar/numerics.hpp"

namespace quantchar {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("p must be finite and >= 1");
}

// min_i |xi - x_i|^p.
double nearest_power(std::span<const double> xi, const Grid& grid, double p, NormSpec norm) {
  const std::size_t d = xi.size();
  if (d == 1) {
    double best = kInf;
    for (const auto& x : grid) best = std::min(best, std::abs(xi[0] - x[0]));
    return p == 1.0 ? best : p == 2.0 ? best * best : std::pow(best, p);
  }
  if (norm.is_euclidean()) {
    double best = kInf;
    for (const auto& x : grid) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += (xi[k] - x[k]) * (xi[k] - x[k]);
      best = std::min(best, s);
    }
    return p == 2.0 ? best : std::pow(best, 0.5 * p);
  }
  double best = kInf;
  for (const auto& x : grid) best = std::min(best, distance(xi, x, norm));
  return std::pow(best, p);
}

double root(double power, double p) {
  if (power <= 0.0) return 0.0;
  return p == 1.0 ? power : p == 2.0 ? std::sqrt(power) : std::pow(power, 1.0 / p);
}

void require_grid_dimension(const Grid& grid, std::size_t d) {
  if (checked_dimension(grid) != d) throw DimensionMismatch("grid and measure dimensions differ");
}

}  // namespace

double qerr_discrete_power(const DiscreteMeasure& mu, const Grid& grid, double p, NormSpec norm) {
  require_power(p);
  require_grid_dimension(grid, mu.dimension());
  std::vector<double> terms(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k)
    terms[k] = mu.weights()[k] * nearest_power(mu.atoms()[k], grid, p, norm);
  return pairwise_sum(terms);
}

double qerr_discrete(const DiscreteMeasure& mu, const Grid& grid, double p, NormSpec norm) {
  return root(qerr_discrete_power(mu, grid, p, norm), p);
}

bool analytic_1d_supported(const Analytic1D& mu, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) return false;
  switch (mu.family()) {
    case Analytic1D::Family::dirac:
    case Analytic1D::Family::uniform:
      return true;
    case Analytic1D::Family::normal:
    case Analytic1D::Family::lognormal:
      return p == 1.0 || (p == std::floor(p) && std::fmod(p, 2.0) == 0.0 && p <= 64.0);
  }
  return false;
}

double qerr_analytic_1d_power(const Analytic1D& mu, const Grid& grid, double p) {
  require_power(p);
  require_grid_dimension(grid, 1);
  if (!analytic_1d_supported(mu, p))
    throw Unsupported("qerr_analytic_1d: no exact evaluation for this law at p = " +
                      std::to_string(p));
  std::vector<double> xs;
  xs.reserve(grid.size());
  for (const auto& x : grid) xs.push_back(x[0]);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<double> terms(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double lower = k == 0 ? -kInf : 0.5 * (xs[k - 1] + xs[k]);
    const double upper = k + 1 == xs.size() ? kInf : 0.5 * (xs[k] + xs[k + 1]);
    terms[k] = mu.cell_power_moment(lower, upper, xs[k], p);
  }
  return pairwise_sum(terms);
}

double qerr_analytic_1d(const Analytic1D& mu, const Grid& grid, double p) {
  return root(qerr_analytic_1d_power(mu, grid, p), p);
}

McEstimate qerr_mc(const Measure& mu, const Grid& grid, double p, NormSpec norm,
                   std::size_t samples, Seed seed) {
  require_power(p);
  if (samples < 2) throw InvalidArgument("qerr_mc: need at least 2 samples");
  require_grid_dimension(grid, mu.dimension());
  const auto points = sample(mu, samples, seed);
  std::vector<double> values(samples);
  for (std::size_t k = 0; k < samples; ++k) values[k] = nearest_power(points[k], grid, p, norm);
  const double n = static_cast<double>(samples);
  const double mean = pairwise_sum(values) / n;
  for (auto& v : values) v = (v - mean) * (v - mean);
  const double variance = pairwise_sum(values) / (n - 1.0);
  if (!std::isfinite(mean) || !std::isfinite(variance))
    throw NumericalError("qerr_mc: non-finite estimate");
  const double value = root(mean, p);
  const double power_se = std::sqrt(variance / n);
  double se = 0.0;
  if (power_se > 0.0 && value > 0.0) se = power_se * std::pow(value, 1.0 - p) / p;
  return {value, se, samples, seed};
}

std::string_view to_string(QErrorMethod method) {
  switch (method) {
    case QErrorMethod::exact_discrete: return "exact_discrete";
    case QErrorMethod::closed_form: return "closed_form";
    case QErrorMethod::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

QErrorValue qerr(const Measure& mu, const Grid& grid, double p, const QErrorOptions& options) {
  if (!options.force_monte_carlo) {
    if (const auto* d = mu.discrete())
      return {qerr_discrete(*d, grid, p, options.norm), QErrorMethod::exact_discrete, {}};
    if (const auto* a = mu.analytic(); a && analytic_1d_supported(*a, p))
      return {qerr_analytic_1d(*a, grid, p), QErrorMethod::closed_form, {}};
  }
  const auto est = qerr_mc(mu, grid, p, options.norm, options.mc_samples, options.seed);
  return {est.value, QErrorMethod::monte_carlo, est.std_error};
}

// ---------------------------------------------------------------------------

ErrorFunction ErrorFunction::exact(const Measure& mu, double p, NormSpec norm) {
  require_power(p);
  if (mu.sampled()) throw Unsupported("ErrorFunction::exact: sampler-backed measure");
  if (const auto* a = mu.analytic(); a && !analytic_1d_supported(*a, p))
    throw Unsupported("ErrorFunction::exact: no exact evaluation at this p");
  return ErrorFunction(std::make_shared<const Measure>(mu), p, norm, 0);
}

ErrorFunction ErrorFunction::common_pool(const Measure& mu, double p, NormSpec norm,
                                         std::size_t samples, Seed seed) {
  require_power(p);
  if (samples < 2) throw InvalidArgument("ErrorFunction::common_pool: need at least 2 samples");
  auto pool = DiscreteMeasure::uniform_over(sample(mu, samples, seed));
  return ErrorFunction(std::make_shared<const Measure>(std::move(pool)), p, norm, samples);
}

double ErrorFunction::power(const Grid& x) const {
  if (const auto* d = mu_->discrete()) return qerr_discrete_power(*d, x, p_, norm_);
  return qerr_analytic_1d_power(*mu_->analytic(), x, p_);
}

double ErrorFunction::operator()(const Grid& x) const { return root(power(x), p_); }

std::size_t ErrorFunction::dimension() const { return mu_->dimension(); }

std::pair<Point, Point> ErrorFunction::support_box() const {
  if (const auto* d = mu_->discrete()) {
    Point lo = d->atoms().front();
    Point hi = lo;
    for (const auto& a : d->atoms()) {
      for (std::size_t k = 0; k < a.size(); ++k) {
        lo[k] = std::min(lo[k], a[k]);
        hi[k] = std::max(hi[k], a[k]);
      }
    }
    return {lo, hi};
  }
  const auto& a = *mu_->analytic();
  const auto [first, second] = a.parameters();
  switch (a.family()) {
    case Analytic1D::Family::dirac: return {{first}, {first}};
    case Analytic1D::Family::uniform: return {{first}, {second}};
    case Analytic1D::Family::normal: return {{first - 4.0 * second}, {first + 4.0 * second}};
    case Analytic1D::Family::lognormal: return {{0.0}, {std::exp(first + 4.0 * second)}};
  }
  return {{0.0}, {0.0}};
}

}  // namespace quantchar
