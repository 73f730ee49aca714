#include "quantchar/characterization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quantchar/error.hpp"
#include "quantchar/numerics.hpp"

namespace quantchar {
namespace {

ProbabilityEstimate to_probability(double raw) {
  const double value = std::clamp(raw, 0.0, 1.0);
  return {value, raw, value != raw};
}

void require_unit(const Point& u) {
  double s = 0.0;
  for (double c : u) s += c * c;
  if (std::abs(std::sqrt(s) - 1.0) > 1e-9)
    throw InvalidArgument("direction must have unit Euclidean norm");
}

Point scaled(const Point& u, double t) {
  Point out(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = t * u[k];
  return out;
}

double profile_constant_1d(const MollifierSpec& spec, double radius) {
  std::vector<double> breaks{-radius, 0.0, radius};
  for (const auto& a : spec.base_grid)
    for (const auto& b : spec.base_grid) {
      const double mid = 0.5 * (a[0] + b[0]);
      if (std::abs(mid) < radius) breaks.push_back(mid);
    }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    total += integrate([&](double t) { return mollifier_profile(spec, Point{t}); }, breaks[k],
                       breaks[k + 1], 1e-10)
                 .value;
  }
  return total;
}

}  // namespace

MollifierSpec make_mollifier(std::size_t d, double p, NormSpec norm, double epsilon,
                             const MollifierOptions& options) {
  if (d == 0) throw InvalidArgument("make_mollifier: dimension must be >= 1");
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("make_mollifier: p must be >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InvalidArgument("make_mollifier: epsilon must be > 0");

  MollifierSpec spec;
  spec.p = p;
  spec.norm = norm;
  spec.epsilon = epsilon;
  if (norm.is_euclidean()) {
    spec.base_grid = bounded_cell_grid_euclidean(d, 1.0);
  } else {
    spec.base_grid = Grid{Point(d, 0.0)};
    for (auto& c : covering_grid(d, norm)) spec.base_grid.push_back(std::move(c));
  }

  const auto extent = cell_radius(spec.base_grid, 0, norm, options.directions,
                                  derive_seed(options.seed, 11));
  if (!extent.bounded) throw InvalidArgument("make_mollifier: origin cell is unbounded");
  spec.cell_radius = extent.radius;
  // The profile vanishes off the cell, so a generous domain costs nothing.
  const double radius = 1.1 * extent.radius + 1e-9;

  auto profile = [&](const Point& xi) { return mollifier_profile(spec, xi); };
  if (d == 1) {
    spec.c_phi = profile_constant_1d(spec, radius);
  } else if (d == 2) {
    spec.c_phi = integrate_2d([&](double x, double y) { return profile(Point{x, y}); }, -radius,
                              radius, -radius, radius, 1e-8)
                     .value;
  } else {
    const std::size_t n = options.mc_samples;
    if (n < 2) throw InvalidArgument("make_mollifier: need at least 2 samples");
    const double volume = std::pow(2.0 * radius, static_cast<double>(d));
    std::vector<double> values(n);
    const Seed seed = derive_seed(options.seed, 12);
    Point xi(d);
    for (std::size_t i = 0; i < n; ++i) {
      CounterRng rng(seed, i);
      for (auto& c : xi) c = radius * (2.0 * rng.uniform() - 1.0);
      values[i] = volume * profile(xi);
    }
    const double mean = pairwise_sum(values) / static_cast<double>(n);
    for (auto& v : values) v = (v - mean) * (v - mean);
    spec.c_phi = mean;
    spec.c_phi_std_error =
        std::sqrt(pairwise_sum(values) / static_cast<double>(n - 1) / static_cast<double>(n));
  }
  if (!(spec.c_phi > 0.0)) throw NumericalError("make_mollifier: profile integral is not positive");
  return spec;
}

double mollifier_profile(const MollifierSpec& spec, const Point& xi) {
  double others = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < spec.base_grid.size(); ++i)
    others = std::min(others, distance(xi, spec.base_grid[i], spec.norm));
  const double origin = norm(xi, spec.norm);
  if (origin >= others) return 0.0;
  return std::pow(others, spec.p) - std::pow(origin, spec.p);
}

double mollified_density(const ErrorFunction& handle, const MollifierSpec& spec, const Point& x,
                         std::size_t level) {
  const std::size_t d = x.size();
  if (handle.dimension() != d || spec.base_grid.front().size() != d)
    throw DimensionMismatch("mollified_density: dimension mismatch");
  if (handle.p() != spec.p || !(handle.norm() == spec.norm))
    throw InvalidArgument("mollified_density: evaluator p or norm differs from the mollifier");
  const std::size_t arity = spec.base_grid.size();
  if (level != 0 && level < arity)
    throw InvalidArgument("mollified_density: level is below the mollifier grid size");

  auto shifted = [&](std::size_t i) {
    Point out(d);
    for (std::size_t k = 0; k < d; ++k) out[k] = x[k] - spec.epsilon * spec.base_grid[i][k];
    return out;
  };
  Grid with_shift{shifted(1)};
  Grid with_base{x};
  for (std::size_t i = 1; i < arity; ++i) {
    with_shift.push_back(shifted(i));
    with_base.push_back(shifted(i));
  }
  while (level > with_shift.size()) {
    with_shift.push_back(with_shift.back());
    with_base.push_back(with_base.back());
  }

  const double upper = handle.power(with_shift);
  const double lower = handle.power(with_base);
  const double scale = spec.c_phi * std::pow(spec.epsilon, static_cast<double>(d) + spec.p);
  const double value = (upper - lower) / scale;
  if (value < -1e-10 * (1.0 + std::abs(upper)) / scale)
    throw NumericalError("mollified_density: negative value; evaluator is inconsistent");
  return value;
}

ProbabilityEstimate cdf_from_e11(const ErrorFunction& handle, double x, std::optional<double> h) {
  if (handle.dimension() != 1 || handle.p() != 1.0)
    throw InvalidArgument("cdf_from_e11: requires a one-dimensional e_{1,1} evaluator");
  const double step = h.value_or(1e-5 * (1.0 + std::abs(x)));
  if (!(step > 0.0)) throw InvalidArgument("cdf_from_e11: h must be > 0");
  const double slope = (handle(Grid{{x + step}}) - handle(Grid{{x}})) / step;
  return to_probability(0.5 * (1.0 + slope));
}

double projected_call(const ErrorFunction& handle, const Point& u, double lower, double upper) {
  if (handle.p() != 2.0 || !handle.norm().is_euclidean())
    throw InvalidArgument("projected_call: requires a Euclidean e_{2,2} evaluator");
  if (u.size() != handle.dimension()) throw DimensionMismatch("projected_call: direction size");
  require_unit(u);
  if (!(upper > lower)) throw InvalidArgument("projected_call: requires upper > lower");
  const Point a = scaled(u, lower);
  const Point b = scaled(u, upper);
  return (handle.power(Grid{a, a}) - handle.power(Grid{a, b})) / (2.0 * (upper - lower));
}

ProbabilityEstimate survival_from_e22(const ErrorFunction& handle, const Point& u, double lambda,
                                      std::optional<double> h) {
  const double step = h.value_or(1e-4 * (1.0 + std::abs(lambda)));
  if (!(step > 0.0)) throw InvalidArgument("survival_from_e22: h must be > 0");
  const double here = projected_call(handle, u, lambda, lambda + step);
  const double next = projected_call(handle, u, lambda + step, lambda + 2.0 * step);
  return to_probability(-(next - here) / step);
}

double reduce_even_p(const ErrorFunction& handle, double a, double b, double h) {
  const double p = handle.p();
  if (handle.dimension() != 1) throw DimensionMismatch("reduce_even_p: requires dimension 1");
  if (!(p >= 4.0) || p != std::floor(p) || std::fmod(p, 2.0) != 0.0)
    throw InvalidArgument("reduce_even_p: p must be an even integer >= 4");
  if (!(h > 0.0)) throw InvalidArgument("reduce_even_p: h must be > 0");
  if (!(a < b - 2.0 * h)) throw InvalidArgument("reduce_even_p: requires a < b - 2h");
  auto f = [&](double s, double t) { return handle.power(Grid{{s}, {t}}); };
  const double second = (f(a + h, b - h) - 2.0 * f(a, b) + f(a - h, b + h)) / (h * h);
  return second / (p * (p - 1.0));
}

}  // namespace quantchar
