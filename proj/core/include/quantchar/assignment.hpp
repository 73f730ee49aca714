#pragma once

#include <cstddef>
#include <vector>

namespace quantchar {

struct Assignment {
  /// row i is matched with column column_of_row[i].
  std::vector<std::size_t> column_of_row;
  double cost = 0.0;
};

/// Minimum-cost perfect matching of a square cost matrix (row-major, n x n)
/// by shortest augmenting paths with dual potentials, O(n^3).
Assignment solve_assignment(const std::vector<double>& cost, std::size_t n);

}  // namespace quantchar
