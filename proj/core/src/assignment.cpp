#include "quantchar/assignment.hpp"

#include <cmath>
#include <limits>

#include "quantchar/error.hpp"

namespace quantchar {

Assignment solve_assignment(const std::vector<double>& cost, std::size_t n) {
  if (cost.size() != n * n) throw InvalidArgument("solve_assignment: cost is not n x n");
  for (double c : cost)
    if (!std::isfinite(c)) throw InvalidArgument("solve_assignment: non-finite cost");
  Assignment result;
  if (n == 0) return result;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  // 1-based columns; column 0 is the virtual source of each augmentation.
  std::vector<double> row_potential(n + 1, 0.0);
  std::vector<double> col_potential(n + 1, 0.0);
  std::vector<std::size_t> row_of_col(n + 1, kNone);
  std::vector<std::size_t> previous(n + 1, 0);
  auto at = [&](std::size_t r, std::size_t c) { return cost[r * n + (c - 1)]; };

  for (std::size_t r = 0; r < n; ++r) {
    row_of_col[0] = r;
    std::size_t col = 0;
    std::vector<double> slack(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col] = true;
      const std::size_t row = row_of_col[col];
      double delta = kInf;
      std::size_t next = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double reduced = at(row, j) - row_potential[row + 1] - col_potential[j];
        if (reduced < slack[j]) {
          slack[j] = reduced;
          previous[j] = col;
        }
        if (slack[j] < delta) {
          delta = slack[j];
          next = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          row_potential[row_of_col[j] + 1] += delta;
          col_potential[j] -= delta;
        } else {
          slack[j] -= delta;
        }
      }
      col = next;
    } while (row_of_col[col] != kNone);
    // Flip the augmenting path back to the source.
    do {
      const std::size_t prior = previous[col];
      row_of_col[col] = row_of_col[prior];
      col = prior;
    } while (col != 0);
  }

  result.column_of_row.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) result.column_of_row[row_of_col[j]] = j - 1;
  for (std::size_t r = 0; r < n; ++r) result.cost += cost[r * n + result.column_of_row[r]];
  return result;
}

}  // namespace quantchar
