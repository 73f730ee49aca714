#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace quantchar {

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dimension() const { return lower.size(); }
  /// Projects x onto the box, coordinate-wise.
  std::vector<double> clamp(std::vector<double> x) const;
};

struct NelderMeadOptions {
  std::size_t max_evaluations = 1000;
  double initial_step = 0.1;
  /// Stop when the spread of simplex values falls below this.
  double value_tolerance = 1e-13;
  /// Stop when the simplex diameter falls below this.
  double point_tolerance = 1e-10;
  /// When set, every trial point is projected onto the box first.
  std::optional<Box> bounds;
};

struct NelderMeadResult {
  std::vector<double> point;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Downhill simplex minimization (reflection / expansion / contraction /
/// shrink) of f starting from x0. Deterministic.
NelderMeadResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                                      std::vector<double> x0, const NelderMeadOptions& options);

/// Golden-section maximization of a unimodal function on [lower, upper].
struct ScalarOptimum {
  double argument = 0.0;
  double value = 0.0;
};
ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lower,
                                      double upper, double tolerance = 1e-12,
                                      std::size_t max_iterations = 500);

}  // namespace quantchar
