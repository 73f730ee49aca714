#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "quantchar/geometry.hpp"
#include "quantchar/measures.hpp"
#include "quantchar/quanterror.hpp"

namespace quantchar {

enum class PlanKind { quantile_1d, assignment };

struct TransportPlanValue {
  double cost = 0.0;
  PlanKind plan_kind = PlanKind::quantile_1d;
};

/// L^p Wasserstein distance between one-dimensional laws through the quantile
/// coupling. Exact merge of cumulative weights when both laws are discrete;
/// otherwise tanh-sinh quadrature on (0, 1) split at the jumps of any
/// discrete quantile function. Throws Unsupported for sampler-backed laws.
double wasserstein_1d(const Measure& mu, const Measure& nu, double p);

/// ((1/n) min over permutations sum |x_i - y_sigma(i)|^p)^(1/p) for equal-size
/// uniform empirical laws; n <= 2000.
double wasserstein_assignment(const std::vector<Point>& xs, const std::vector<Point>& ys,
                              double p, NormSpec norm = {});

struct QDistOptions {
  std::size_t level = 1;
  /// Per-coordinate search interval; default is the joint support bounding
  /// box scaled by 2 about its center (at least 1 wide).
  std::optional<std::pair<Point, Point>> box;
  /// Lattice points are spread evenly over box^N up to this budget.
  std::size_t lattice_budget = 20000;
  /// Local polishes started from the best lattice points.
  std::size_t restarts = 4;
  std::size_t polish_evaluations = 1000;
  Seed seed{};
};

struct QDistReport {
  /// |e(mu, argmax_grid) - e(nu, argmax_grid)|, a lower bound on Q_{N,p}.
  double lower_bound = 0.0;
  Grid argmax_grid;
  std::size_t evaluations = 0;
  std::pair<Point, Point> search_box;
  std::size_t converged_restarts = 0;
  /// Lattice spacing per coordinate; by 1-Lipschitz continuity the lattice
  /// maximum is within level * pitch of the box maximum (for the norm used).
  double pitch = 0.0;
  std::size_t lattice_points_per_axis = 0;
};

/// Lattice scan of box^N followed by bounded Nelder-Mead polish of
/// g(x) = |e(mu, x) - e(nu, x)|. Throws InvalidArgument on a degenerate box,
/// mismatched p, norms or dimensions.
QDistReport qdist(const ErrorFunction& mu, const ErrorFunction& nu, const QDistOptions& options);

}  // namespace quantchar
