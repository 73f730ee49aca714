#include "quantchar/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "quantchar/error.hpp"

namespace quantchar {

std::vector<double> Box::clamp(std::vector<double> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
  return x;
}

NelderMeadResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                                      std::vector<double> x0, const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw InvalidArgument("nelder_mead_minimize: empty starting point");

  std::size_t evaluations = 0;
  auto project = [&](std::vector<double> x) {
    return options.bounds ? options.bounds->clamp(std::move(x)) : x;
  };
  auto eval = [&](const std::vector<double>& x) {
    ++evaluations;
    return f(x);
  };

  std::vector<std::vector<double>> simplex;
  std::vector<double> values;
  simplex.push_back(project(x0));
  values.push_back(eval(simplex.front()));
  for (std::size_t i = 0; i < n; ++i) {
    auto v = simplex.front();
    v[i] += options.initial_step;
    if (options.bounds && v[i] > options.bounds->upper[i]) v[i] -= 2.0 * options.initial_step;
    v = project(std::move(v));
    values.push_back(eval(v));
    simplex.push_back(std::move(v));
  }

  std::vector<std::size_t> order(n + 1);
  bool converged = false;
  while (evaluations < options.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    // Stable sort keeps the outcome deterministic under equal values.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    double diameter = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(simplex[k][i] - simplex[best][i]));
      diameter = std::max(diameter, d);
    }
    if (values[worst] - values[best] <= options.value_tolerance &&
        diameter <= options.point_tolerance) {
      converged = true;
      break;
    }
    if (diameter <= options.point_tolerance * 1e-3) {
      converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == worst) continue;
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = centroid[i] + t * (simplex[worst][i] - centroid[i]);
      return project(std::move(x));
    };

    auto reflected = along(-1.0);
    const double f_reflected = eval(reflected);
    if (f_reflected < values[best]) {
      auto expanded = along(-2.0);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = std::move(expanded);
        values[worst] = f_expanded;
      } else {
        simplex[worst] = std::move(reflected);
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = std::move(reflected);
      values[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < values[worst];
    auto contracted = along(outside ? -0.5 : 0.5);
    const double f_contracted = eval(contracted);
    if (f_contracted < (outside ? f_reflected : values[worst])) {
      simplex[worst] = std::move(contracted);
      values[worst] = f_contracted;
      continue;
    }
    // Shrink towards the best vertex.
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) continue;
      for (std::size_t i = 0; i < n; ++i)
        simplex[k][i] = simplex[best][i] + 0.5 * (simplex[k][i] - simplex[best][i]);
      simplex[k] = project(std::move(simplex[k]));
      values[k] = eval(simplex[k]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best_index = static_cast<std::size_t>(best_it - values.begin());
  return {simplex[best_index], *best_it, evaluations, converged};
}

ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lower,
                                      double upper, double tolerance,
                                      std::size_t max_iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lower;
  double b = upper;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (std::size_t it = 0; it < max_iterations && (b - a) > tolerance * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? ScalarOptimum{c, fc} : ScalarOptimum{d, fd};
}

}  // namespace quantchar
