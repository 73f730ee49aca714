#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "quantchar/measures.hpp"
#include "quantchar/types.hpp"

namespace quantchar {

struct LloydOptions {
  std::size_t iterations = 100;
  /// Size of the fixed sample pool for analytic or sampled laws.
  std::size_t pool_size = 100000;
  Seed seed{};
  /// Explicit starting grid; otherwise N distinct pool points by seeded
  /// reservoir sampling.
  std::optional<Grid> init;
  /// For one-dimensional analytic laws: use exact cell masses and first
  /// moments instead of a pool. Initial points are seeded draws from the law
  /// and an empty cell's generator is moved to a fresh draw.
  bool exact_cells = false;
  /// Early exit once (D_prev - D) <= relative_tolerance * D_prev.
  double relative_tolerance = 1e-12;
};

struct LloydResult {
  Grid grid;
  /// Mean squared distance to the grid on the pool, one entry per partition
  /// step starting with the initial grid.
  std::vector<double> distortion_history;
  std::size_t distinct_points = 0;
  std::size_t iterations = 0;
};

/// Quadratic Euclidean Lloyd iteration on a fixed pool (the atoms of a
/// discrete law, or pool_size samples otherwise). Cells whose generator wins
/// no pool point are re-seeded at the pool point farthest from the grid. In
/// dimension one the returned grid is sorted. When n is at least the number of
/// distinct atoms of a discrete law, the support itself is returned.
/// In exact-cell mode the distortion is the exact e_{N,2}^2.
LloydResult lloyd(const Measure& mu, std::size_t n, const LloydOptions& options = {});

}  // namespace quantchar
