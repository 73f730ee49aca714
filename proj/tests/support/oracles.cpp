#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace quantchar::oracle {

double simpson(const std::function<double(double)>& f, double a, double b, std::size_t intervals) {
  if (intervals % 2 == 1) ++intervals;
  if (intervals == 0) intervals = 2;
  const double h = (b - a) / static_cast<double>(intervals);
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i < intervals; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  return sum * h / 3.0;
}

double piecewise_simpson(const std::function<double(double)>& f, double lo, double hi,
                         std::vector<double> breaks, std::size_t intervals_per_piece) {
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = std::max(breaks[k], lo);
    const double b = std::min(breaks[k + 1], hi);
    if (b > a) total += simpson(f, a, b, intervals_per_piece);
  }
  return total;
}

double lr_distance(const std::vector<double>& a, const std::vector<double>& b, double r) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = std::abs(a[k] - b[k]);
    if (std::isinf(r)) {
      acc = std::max(acc, d);
    } else {
      acc += std::pow(d, r);
    }
  }
  return std::isinf(r) ? acc : std::pow(acc, 1.0 / r);
}

double density_qerr_power(const std::function<double(double)>& pdf, double lo, double hi,
                          const std::vector<double>& grid, double p,
                          std::size_t intervals_per_piece) {
  std::vector<double> breaks(grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i + 1; j < grid.size(); ++j) breaks.push_back(0.5 * (grid[i] + grid[j]));
  auto integrand = [&](double xi) {
    double best = std::numeric_limits<double>::infinity();
    for (double x : grid) best = std::min(best, std::abs(xi - x));
    return std::pow(best, p) * pdf(xi);
  };
  return piecewise_simpson(integrand, lo, hi, breaks, intervals_per_piece);
}

double lognormal_qerr_power(double m, double s, const std::vector<double>& grid, double p,
                            std::size_t intervals_per_piece) {
  std::vector<double> breaks;
  auto add = [&](double x) {
    if (x > 0.0) breaks.push_back(std::log(x));
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    add(grid[i]);
    for (std::size_t j = i + 1; j < grid.size(); ++j) add(0.5 * (grid[i] + grid[j]));
  }
  auto integrand = [&](double y) {
    const double xi = std::exp(y);
    double best = std::numeric_limits<double>::infinity();
    for (double x : grid) best = std::min(best, std::abs(xi - x));
    return std::pow(best, p) * gaussian_pdf((y - m) / s) / s;
  };
  return piecewise_simpson(integrand, m - 16.0 * s, m + 16.0 * s, breaks, intervals_per_piece);
}

double discrete_qerr_power(const std::vector<std::vector<double>>& atoms,
                           const std::vector<double>& weights,
                           const std::vector<std::vector<double>>& grid, double p, double r) {
  double total = 0.0;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& x : grid) best = std::min(best, lr_distance(atoms[k], x, r));
    total += weights[k] * std::pow(best, p);
  }
  return total;
}

double permutation_wasserstein(const std::vector<std::vector<double>>& xs,
                               const std::vector<std::vector<double>>& ys, double p, double r) {
  std::vector<std::size_t> perm(xs.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) cost += std::pow(lr_distance(xs[i], ys[perm[i]], r), p);
    best = std::min(best, cost);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::pow(best / static_cast<double>(xs.size()), 1.0 / p);
}

double cdf_route_w1(const std::vector<double>& xs, const std::vector<double>& wx,
                    const std::vector<double>& ys, const std::vector<double>& wy) {
  std::vector<double> knots(xs);
  knots.insert(knots.end(), ys.begin(), ys.end());
  std::sort(knots.begin(), knots.end());
  auto cdf = [](const std::vector<double>& v, const std::vector<double>& w, double t) {
    double s = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k] <= t) s += w[k];
    return s;
  };
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double t = knots[k];
    total += std::abs(cdf(xs, wx, t) - cdf(ys, wy, t)) * (knots[k + 1] - knots[k]);
  }
  return total;
}

double gaussian_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double gaussian_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

std::vector<double> Gen::simplex_weights(std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& v : w) {
    v = uniform(0.05, 1.0);
    total += v;
  }
  for (auto& v : w) v /= total;
  // Push the rounding residue into the largest weight.
  const double residue = 1.0 - std::accumulate(w.begin(), w.end(), 0.0);
  *std::max_element(w.begin(), w.end()) += residue;
  return w;
}

}  // namespace quantchar::oracle
