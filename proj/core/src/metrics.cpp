#include "quantchar/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "quantchar/assignment.hpp"
#include "quantchar/error.hpp"
#include "quantchar/numerics.hpp"
#include "quantchar/optimize.hpp"

namespace quantchar {
namespace {

struct Atoms1D {
  std::vector<double> values;
  std::vector<double> cumulative;
};

Atoms1D sorted_atoms(const DiscreteMeasure& d) {
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return d.atoms()[a][0] < d.atoms()[b][0];
  });
  Atoms1D out;
  double running = 0.0;
  for (std::size_t k : order) {
    running += d.weights()[k];
    out.values.push_back(d.atoms()[k][0]);
    out.cumulative.push_back(running);
  }
  out.cumulative.back() = 1.0;
  return out;
}

double discrete_quantile(const Atoms1D& a, double q) {
  auto it = std::lower_bound(a.cumulative.begin(), a.cumulative.end(), q);
  if (it == a.cumulative.end()) return a.values.back();
  return a.values[static_cast<std::size_t>(it - a.cumulative.begin())];
}

double power_of(double x, double p) { return p == 1.0 ? x : p == 2.0 ? x * x : std::pow(x, p); }

double root(double v, double p) {
  if (v <= 0.0) return 0.0;
  return p == 1.0 ? v : p == 2.0 ? std::sqrt(v) : std::pow(v, 1.0 / p);
}

}  // namespace

double wasserstein_1d(const Measure& mu, const Measure& nu, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("wasserstein_1d: p must be >= 1");
  if (mu.dimension() != 1 || nu.dimension() != 1)
    throw DimensionMismatch("wasserstein_1d: both laws must be one-dimensional");
  if (mu.sampled() || nu.sampled())
    throw Unsupported("wasserstein_1d: convert sampler-backed laws to empirical measures first");

  if (mu.discrete() && nu.discrete()) {
    const auto a = sorted_atoms(*mu.discrete());
    const auto b = sorted_atoms(*nu.discrete());
    std::vector<double> terms;
    double level = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.values.size() && j < b.values.size()) {
      const double next = std::min(a.cumulative[i], b.cumulative[j]);
      terms.push_back((next - level) * power_of(std::abs(a.values[i] - b.values[j]), p));
      level = next;
      if (a.cumulative[i] == next) ++i;
      if (b.cumulative[j] == next) ++j;
    }
    return root(pairwise_sum(terms), p);
  }

  std::optional<Atoms1D> a_atoms;
  std::optional<Atoms1D> b_atoms;
  if (mu.discrete()) a_atoms = sorted_atoms(*mu.discrete());
  if (nu.discrete()) b_atoms = sorted_atoms(*nu.discrete());
  auto quantile = [](const Measure& m, const std::optional<Atoms1D>& atoms, double q) {
    return atoms ? discrete_quantile(*atoms, q) : m.analytic()->quantile(q);
  };

  std::vector<double> breaks{0.0, 1.0};
  for (const auto* atoms : {&a_atoms, &b_atoms}) {
    if (*atoms) breaks.insert(breaks.end(), (*atoms)->cumulative.begin(), (*atoms)->cumulative.end());
  }
  // Levels where one quantile function crosses an atom of the other.
  if (a_atoms && nu.analytic())
    for (double x : a_atoms->values) breaks.push_back(nu.analytic()->cdf(x));
  if (b_atoms && mu.analytic())
    for (double y : b_atoms->values) breaks.push_back(mu.analytic()->cdf(y));
  auto difference = [&](double q) { return quantile(mu, a_atoms, q) - quantile(nu, b_atoms, q); };
  // Crossings of two continuous quantile functions, located by scan and bisection.
  if (mu.analytic() && nu.analytic()) {
    constexpr int kScan = 1024;
    double prev_q = 0.5 / kScan;
    double prev = difference(prev_q);
    for (int i = 1; i < kScan; ++i) {
      const double q = (i + 0.5) / kScan;
      const double cur = difference(q);
      if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) {
        double lo = prev_q;
        double hi = q;
        for (int it = 0; it < 100 && hi - lo > 1e-16; ++it) {
          const double mid = 0.5 * (lo + hi);
          ((difference(mid) < 0.0) == (prev < 0.0) ? lo : hi) = mid;
        }
        breaks.push_back(0.5 * (lo + hi));
      }
      prev_q = q;
      prev = cur;
    }
  }
  for (auto& b : breaks) b = std::clamp(b, 0.0, 1.0);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  auto integrand = [&](double q) { return power_of(std::abs(difference(q)), p); };
  std::vector<double> pieces;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    if (breaks[k + 1] <= breaks[k]) continue;
    pieces.push_back(integrate_endpoint_singular(integrand, breaks[k], breaks[k + 1], 1e-13).value);
  }
  const double total = pairwise_sum(pieces);
  if (!std::isfinite(total)) throw NumericalError("wasserstein_1d: non-finite quantile integral");
  return root(total, p);
}

double wasserstein_assignment(const std::vector<Point>& xs, const std::vector<Point>& ys,
                              double p, NormSpec norm) {
  if (xs.size() != ys.size()) throw InvalidArgument("wasserstein_assignment: length mismatch");
  if (xs.empty()) throw InvalidArgument("wasserstein_assignment: empty samples");
  if (xs.size() > 2000) throw InvalidArgument("wasserstein_assignment: n exceeds 2000");
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("wasserstein_assignment: p >= 1");
  const std::size_t n = xs.size();
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = power_of(distance(xs[i], ys[j], norm), p);
  const auto match = solve_assignment(cost, n);
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) terms[i] = cost[i * n + match.column_of_row[i]];
  return root(pairwise_sum(terms) / static_cast<double>(n), p);
}

// ---------------------------------------------------------------------------

namespace {

Grid unflatten(const std::vector<double>& flat, std::size_t level, std::size_t d) {
  Grid g(level, Point(d));
  for (std::size_t i = 0; i < level; ++i)
    for (std::size_t k = 0; k < d; ++k) g[i][k] = flat[i * d + k];
  return g;
}

struct Candidate {
  double value;
  std::vector<double> flat;
};

// Larger value first; equal values keep the lexicographically smaller grid.
bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.flat < b.flat;
}

}  // namespace

QDistReport qdist(const ErrorFunction& mu, const ErrorFunction& nu, const QDistOptions& options) {
  if (mu.p() != nu.p()) throw InvalidArgument("qdist: evaluators use different p");
  if (!(mu.norm() == nu.norm())) throw InvalidArgument("qdist: evaluators use different norms");
  if (mu.dimension() != nu.dimension()) throw DimensionMismatch("qdist: dimensions differ");
  if (options.level == 0) throw InvalidArgument("qdist: level must be >= 1");
  const std::size_t d = mu.dimension();
  const std::size_t level = options.level;
  const std::size_t dims = level * d;

  QDistReport report;
  if (options.box) {
    report.search_box = *options.box;
    const auto& [lo, hi] = report.search_box;
    if (lo.size() != d || hi.size() != d) throw DimensionMismatch("qdist: box dimension");
    for (std::size_t k = 0; k < d; ++k)
      if (!(lo[k] < hi[k]) || !std::isfinite(lo[k]) || !std::isfinite(hi[k]))
        throw InvalidArgument("qdist: degenerate search box");
  } else {
    auto [lo, hi] = mu.support_box();
    const auto [lo2, hi2] = nu.support_box();
    for (std::size_t k = 0; k < d; ++k) {
      const double a = std::min(lo[k], lo2[k]);
      const double b = std::max(hi[k], hi2[k]);
      const double center = 0.5 * (a + b);
      const double half = std::max(b - a, 0.5);
      lo[k] = center - half;
      hi[k] = center + half;
    }
    report.search_box = {lo, hi};
  }
  const auto& [lo, hi] = report.search_box;

  auto g = [&](const std::vector<double>& flat) {
    ++report.evaluations;
    const Grid x = unflatten(flat, level, d);
    return std::abs(mu(x) - nu(x));
  };

  // Odd per-axis count so interval midpoints are lattice points.
  std::size_t per_axis = static_cast<std::size_t>(
      std::floor(std::pow(static_cast<double>(std::max<std::size_t>(options.lattice_budget, 1)),
                          1.0 / static_cast<double>(dims)) + 1e-9));
  per_axis = std::max<std::size_t>(per_axis, 3);
  if (per_axis % 2 == 0) --per_axis;
  report.lattice_points_per_axis = per_axis;
  for (std::size_t k = 0; k < d; ++k)
    report.pitch = std::max(report.pitch, (hi[k] - lo[k]) / static_cast<double>(per_axis - 1));

  const std::size_t keep = std::max<std::size_t>(options.restarts, 1);
  std::vector<Candidate> top;
  std::vector<std::size_t> digit(dims, 0);
  std::vector<double> flat(dims);
  while (true) {
    for (std::size_t c = 0; c < dims; ++c) {
      const std::size_t k = c % d;
      flat[c] = lo[k] + (hi[k] - lo[k]) * static_cast<double>(digit[c]) /
                            static_cast<double>(per_axis - 1);
    }
    Candidate cand{g(flat), flat};
    if (top.size() < keep || better(cand, top.back())) {
      top.insert(std::upper_bound(top.begin(), top.end(), cand, better), cand);
      if (top.size() > keep) top.pop_back();
    }
    // Last coordinate varies fastest, so enumeration is lexicographic.
    std::size_t c = dims;
    while (c > 0 && ++digit[c - 1] == per_axis) digit[--c] = 0;
    if (c == 0) break;
  }

  // Starts beyond the lattice size are filled with seeded points in the box.
  std::vector<std::vector<double>> starts;
  for (const auto& t : top) starts.push_back(t.flat);
  for (std::size_t r = starts.size(); r < options.restarts; ++r) {
    CounterRng rng(options.seed, r);
    std::vector<double> s(dims);
    for (std::size_t c = 0; c < dims; ++c) s[c] = lo[c % d] + (hi[c % d] - lo[c % d]) * rng.uniform();
    starts.push_back(std::move(s));
  }

  Box bounds;
  for (std::size_t c = 0; c < dims; ++c) {
    bounds.lower.push_back(lo[c % d]);
    bounds.upper.push_back(hi[c % d]);
  }
  NelderMeadOptions nm;
  nm.max_evaluations = options.polish_evaluations;
  nm.initial_step = 0.5 * report.pitch;
  nm.bounds = bounds;

  Candidate best = top.front();
  if (options.restarts > 0) {
    for (const auto& s : starts) {
      const auto r = nelder_mead_minimize([&](const std::vector<double>& v) { return -g(v); }, s, nm);
      if (r.converged) ++report.converged_restarts;
      Candidate cand{-r.value, r.point};
      if (better(cand, best)) best = std::move(cand);
    }
  }

  report.argmax_grid = unflatten(best.flat, level, d);
  report.lower_bound = std::abs(mu(report.argmax_grid) - nu(report.argmax_grid));
  return report;
}

}  // namespace quantchar
