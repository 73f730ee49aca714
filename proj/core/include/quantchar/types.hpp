#pragma once

#include <cstddef>
#include <vector>

#include "quantchar/random.hpp"

namespace quantchar {

/// A point of R^d; every coordinate must be finite.
using Point = std::vector<double>;

/// Ordered N-tuple of points (duplicates allowed): the argument of e_{N,p}.
using Grid = std::vector<Point>;

/// Monte Carlo estimate with its standard error.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  Seed seed{};
};

/// Builds a grid of one-dimensional points.
Grid grid_1d(const std::vector<double>& values);

/// Throws DimensionMismatch unless all points share dimension d (returned),
/// InvalidArgument on an empty grid or non-finite coordinates.
std::size_t checked_dimension(const Grid& grid);

}  // namespace quantchar
