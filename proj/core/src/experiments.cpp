#include "quantchar/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "quantchar/error.hpp"
#include "quantchar/lloyd.hpp"
#include "quantchar/metrics.hpp"
#include "quantchar/optimize.hpp"
#include "quantchar/quanterror.hpp"

namespace quantchar {
namespace {

std::vector<double> lattice_axis(double half_width, double pitch) {
  const auto steps = static_cast<std::size_t>(std::llround(2.0 * half_width / pitch));
  std::vector<double> axis(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) axis[k] = -half_width + pitch * static_cast<double>(k);
  return axis;
}

// Visits every point of axis^dims, last coordinate fastest.
template <class Visit>
void for_each_lattice_point(const std::vector<double>& axis, std::size_t dims, Visit&& visit) {
  std::vector<std::size_t> digit(dims, 0);
  std::vector<double> point(dims);
  while (true) {
    for (std::size_t c = 0; c < dims; ++c) point[c] = axis[digit[c]];
    visit(point);
    std::size_t c = dims;
    while (c > 0 && ++digit[c - 1] == axis.size()) digit[--c] = 0;
    if (c == 0) return;
  }
}

Grid as_grid(const std::vector<double>& values) { return grid_1d(values); }

// Lattice maximum of g over [-L, L]^dims, then bounded Nelder-Mead polish from
// the best `starts` lattice points.
double lattice_polish_sup(const std::function<double(const std::vector<double>&)>& g,
                          std::size_t dims, double half_width, double pitch, std::size_t starts) {
  const auto axis = lattice_axis(half_width, pitch);
  std::vector<std::pair<double, std::vector<double>>> top;
  const std::size_t keep = std::max<std::size_t>(starts, 1);
  for_each_lattice_point(axis, dims, [&](const std::vector<double>& x) {
    const double v = g(x);
    if (top.size() < keep || v > top.back().first) {
      auto it = std::find_if(top.begin(), top.end(), [v](const auto& t) { return v > t.first; });
      top.insert(it, {v, x});
      if (top.size() > keep) top.pop_back();
    }
  });
  double best = top.front().first;
  NelderMeadOptions nm;
  nm.initial_step = 0.5 * pitch;
  nm.bounds = Box{std::vector<double>(dims, -half_width), std::vector<double>(dims, half_width)};
  for (std::size_t s = 0; s < std::min(starts, top.size()); ++s) {
    const auto r = nelder_mead_minimize([&](const std::vector<double>& x) { return -g(x); },
                                        top[s].second, nm);
    best = std::max(best, -r.value);
  }
  return best;
}

}  // namespace

double counterexample_limit(const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidArgument("counterexample_limit: empty grid");
  double smallest = std::numeric_limits<double>::infinity();
  for (double a : grid) smallest = std::min(smallest, a * a);
  return std::sqrt(smallest + 1.0);
}

double diagonal_sup_bound(double mean) {
  return std::sqrt(2.0 - 2.0 * std::sqrt(1.0 - mean * mean));
}

double call_sup_bound(double n, double rho) {
  const double root_two_pi = std::sqrt(2.0 * std::numbers::pi);
  return std::max({1.0 / (n * root_two_pi), 2.0 / (n * (1.0 + rho) * rho * root_two_pi),
                   std::exp((rho - 0.5) * n * n / 4.0)});
}

double sup_strike_call(const Analytic1D& law) {
  auto f = [&](double k) { return k * law.call_price(k); };
  constexpr double kLow = -30.0;
  constexpr double kHigh = 30.0;
  constexpr double kStep = 0.05;
  const auto count = static_cast<std::size_t>((kHigh - kLow) / kStep) + 1;
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double v = f(std::exp(kLow + kStep * static_cast<double>(i)));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = std::exp(kLow + kStep * (static_cast<double>(best) - 1.0));
  const double hi = std::exp(kLow + kStep * (static_cast<double>(best) + 1.0));
  return std::max(best_value, golden_section_maximize(f, lo, hi, 1e-14).value);
}

std::vector<CounterexampleRow> run_counterexample(const CounterexampleConfig& config) {
  if (config.level < 2) throw InvalidArgument("counterexample: level must be >= 2");
  if (config.n_max < 1) throw InvalidArgument("counterexample: n_max must be >= 1");
  if (!(config.pitch > 0.0) || !(config.half_width > 0.0))
    throw InvalidArgument("counterexample: pitch and half width must be > 0");

  std::vector<CounterexampleRow> rows;
  const auto axis = lattice_axis(config.half_width, config.pitch);
  for (std::size_t n = 1; n <= config.n_max; ++n) {
    const auto law = Analytic1D::unit_second_moment_lognormal(static_cast<double>(n));
    CounterexampleRow row;
    row.n = n;

    for (double a : axis) {
      const double e = qerr_analytic_1d(law, as_grid({a, a}), 2.0);
      row.sup_discrepancy_diag = std::max(row.sup_discrepancy_diag, std::abs(e - std::sqrt(1.0 + a * a)));
    }

    auto gap = [&](const std::vector<double>& x) {
      return std::abs(qerr_analytic_1d(law, as_grid(x), 2.0) - counterexample_limit(x));
    };
    row.sup_discrepancy_grid =
        lattice_polish_sup(gap, config.level, config.half_width, config.pitch, config.polish_starts);

    row.supK_call = sup_strike_call(law);
    row.w2_to_limit_sq = moment(law, 2.0, Point{0.0});

    if (n > 1) {
      const auto previous = Analytic1D::unit_second_moment_lognormal(static_cast<double>(n - 1));
      QDistOptions q;
      q.level = 2;
      q.box = std::pair<Point, Point>{{-config.half_width}, {config.half_width}};
      q.lattice_budget = config.qdist_budget;
      q.restarts = config.polish_starts;
      q.seed = derive_seed(config.seed, n);
      row.q22_lower_to_prev =
          qdist(ErrorFunction::exact(law, 2.0), ErrorFunction::exact(previous, 2.0), q).lower_bound;
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------

double kolmogorov_distance(std::vector<double> points, const Analytic1D& limit) {
  if (points.empty()) throw InvalidArgument("kolmogorov_distance: no points");
  std::sort(points.begin(), points.end());
  const double n = static_cast<double>(points.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double g = limit.cdf(points[i]);
    worst = std::max({worst, static_cast<double>(i + 1) / n - g, g - static_cast<double>(i) / n});
  }
  return worst;
}

std::vector<GridLawRow> run_grid_law(const GridLawConfig& config) {
  Analytic1D law = Analytic1D::normal(0.0, 1.0);
  Analytic1D limit = Analytic1D::normal(0.0, std::sqrt(3.0));
  if (config.family == "uniform") {
    law = Analytic1D::uniform(0.0, 1.0);
    limit = law;
  } else if (config.family != "normal") {
    throw InvalidArgument("grid-law: unknown family '" + config.family + "'");
  }
  std::vector<GridLawRow> rows;
  for (std::uint64_t seed : config.seeds) {
    for (std::size_t level : config.levels) {
      LloydOptions options;
      options.iterations = config.lloyd_iterations;
      options.pool_size = config.pool_size;
      options.exact_cells = config.exact_cells;
      options.seed = Seed{seed};
      const auto result = lloyd(law, level, options);
      std::vector<double> xs;
      for (const auto& x : result.grid) xs.push_back(x[0]);
      rows.push_back({seed, level, kolmogorov_distance(xs, limit),
                      result.distortion_history.back(), result.iterations});
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------

std::pair<Measure, Measure> equivalence_pair(const std::string& family, std::size_t n) {
  if (n == 0) throw InvalidArgument("equivalence: n must be >= 1");
  const double inv = 1.0 / static_cast<double>(n);
  if (family == "shrinking-dirac") return {Analytic1D::dirac(inv), Analytic1D::dirac(0.0)};
  if (family == "widening-uniform")
    return {Analytic1D::uniform(0.0, 1.0 + inv), Analytic1D::uniform(0.0, 1.0)};
  if (family == "normal-variance")
    return {Analytic1D::normal(0.0, std::sqrt(1.0 + inv)), Analytic1D::normal(0.0, 1.0)};
  throw InvalidArgument("equivalence: unknown family '" + family + "'");
}

std::vector<EquivalenceRow> run_equivalence(const EquivalenceConfig& config) {
  double p = config.p;
  if (p == 0.0) p = config.family == "normal-variance" ? 2.0 : 1.0;
  if (config.lattice_per_axis < 2) throw InvalidArgument("equivalence: lattice needs >= 2 points");
  const double pitch = 2.0 * config.half_width / static_cast<double>(config.lattice_per_axis - 1);
  const auto axis = lattice_axis(config.half_width, pitch);

  std::vector<EquivalenceRow> rows;
  for (std::size_t n : config.n_list) {
    const auto [mu_n, mu_limit] = equivalence_pair(config.family, n);
    const auto e_n = ErrorFunction::exact(mu_n, p);
    const auto e_limit = ErrorFunction::exact(mu_limit, p);
    EquivalenceRow row;
    row.n = n;
    for_each_lattice_point(axis, config.level, [&](const std::vector<double>& x) {
      const Grid g = as_grid(x);
      row.sup_difference = std::max(row.sup_difference, std::abs(e_n(g) - e_limit(g)));
    });
    row.wasserstein = wasserstein_1d(mu_n, mu_limit, p);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace quantchar
