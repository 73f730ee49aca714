#include "quantchar/lloyd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "quantchar/error.hpp"
#include "quantchar/numerics.hpp"
#include "quantchar/quanterror.hpp"

namespace quantchar {
namespace {

constexpr std::size_t kChunk = 4096;

struct Pool {
  std::vector<Point> points;
  std::vector<double> weights;
};

Pool make_pool(const Measure& mu, const LloydOptions& options) {
  if (const auto* d = mu.discrete()) return {d->atoms(), d->weights()};
  if (options.pool_size < 1) throw InvalidArgument("lloyd: pool_size must be >= 1");
  Pool pool{sample(mu, options.pool_size, derive_seed(options.seed, 1)), {}};
  pool.weights.assign(pool.points.size(), 1.0 / static_cast<double>(pool.points.size()));
  return pool;
}

std::vector<Point> distinct_points(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

// Algorithm R over the distinct pool points.
Grid reservoir_init(const std::vector<Point>& distinct, std::size_t n, Seed seed) {
  Grid reservoir;
  reservoir.reserve(n);
  CounterRng rng(derive_seed(seed, 2), 0);
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    if (i < n) {
      reservoir.push_back(distinct[i]);
      continue;
    }
    const std::size_t j = rng.next_u64() % (i + 1);
    if (j < n) reservoir[j] = distinct[i];
  }
  return reservoir;
}

double squared_distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

// One partition step: cell index per pool point and the distortion.
double assign(const Pool& pool, const Grid& grid, std::vector<std::size_t>& cell,
              std::vector<double>& nearest_sq) {
  const std::size_t m = pool.points.size();
  cell.resize(m);
  nearest_sq.resize(m);
  std::vector<double> terms(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t best = 0;
    double best_sq = squared_distance(pool.points[k], grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double s = squared_distance(pool.points[k], grid[i]);
      if (s < best_sq) {
        best_sq = s;
        best = i;
      }
    }
    cell[k] = best;
    nearest_sq[k] = best_sq;
    terms[k] = pool.weights[k] * best_sq;
  }
  return pairwise_sum(terms);
}

// Centroid step with fixed-chunk partial sums; returns the indices of empty
// cells.
std::vector<std::size_t> update_centroids(const Pool& pool, const std::vector<std::size_t>& cell,
                                          Grid& grid) {
  const std::size_t n = grid.size();
  const std::size_t d = grid.front().size();
  const std::size_t m = pool.points.size();
  const std::size_t chunks = (m + kChunk - 1) / kChunk;
  // partial[(i * (d + 1) + k) * chunks + c]: coordinate k (k = d is mass).
  std::vector<double> partial(n * (d + 1) * chunks, 0.0);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t end = std::min(m, (c + 1) * kChunk);
    for (std::size_t j = c * kChunk; j < end; ++j) {
      const std::size_t i = cell[j];
      const double w = pool.weights[j];
      for (std::size_t k = 0; k < d; ++k)
        partial[(i * (d + 1) + k) * chunks + c] += w * pool.points[j][k];
      partial[(i * (d + 1) + d) * chunks + c] += w;
    }
  }
  std::vector<std::size_t> empty;
  for (std::size_t i = 0; i < n; ++i) {
    auto slice = [&](std::size_t k) {
      return std::span<const double>(partial).subspan((i * (d + 1) + k) * chunks, chunks);
    };
    const double mass = pairwise_sum(slice(d));
    if (mass <= 0.0) {
      empty.push_back(i);
      continue;
    }
    for (std::size_t k = 0; k < d; ++k) grid[i][k] = pairwise_sum(slice(k)) / mass;
  }
  return empty;
}

void reseed_empty(const Pool& pool, const std::vector<std::size_t>& empty, Grid& grid) {
  if (empty.empty()) return;
  const std::size_t m = pool.points.size();
  std::vector<double> nearest(m, std::numeric_limits<double>::infinity());
  std::vector<bool> is_empty(grid.size(), false);
  for (std::size_t i : empty) is_empty[i] = true;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (!is_empty[i]) nearest[k] = std::min(nearest[k], squared_distance(pool.points[k], grid[i]));
  for (std::size_t i : empty) {
    const std::size_t far = static_cast<std::size_t>(
        std::max_element(nearest.begin(), nearest.end()) - nearest.begin());
    grid[i] = pool.points[far];
    for (std::size_t k = 0; k < m; ++k)
      nearest[k] = std::min(nearest[k], squared_distance(pool.points[k], grid[i]));
  }
}

// Dimension one: sorted pool, cells are contiguous ranges (ties go left).
struct SortedPool {
  std::vector<double> values;
  std::vector<double> weights;
};

double assign_1d(const SortedPool& pool, const Grid& grid, std::vector<std::size_t>& bounds) {
  const std::size_t n = grid.size();
  bounds.assign(n + 1, 0);
  bounds[n] = pool.values.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double mid = 0.5 * (grid[i][0] + grid[i + 1][0]);
    bounds[i + 1] = static_cast<std::size_t>(
        std::upper_bound(pool.values.begin(), pool.values.end(), mid) - pool.values.begin());
    bounds[i + 1] = std::max(bounds[i + 1], bounds[i]);
  }
  std::vector<double> terms(pool.values.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = bounds[i]; j < bounds[i + 1]; ++j) {
      const double diff = pool.values[j] - grid[i][0];
      terms[j] = pool.weights[j] * diff * diff;
    }
  }
  return pairwise_sum(terms);
}

LloydResult lloyd_1d(const Pool& raw, Grid grid, const LloydOptions& options) {
  std::vector<std::size_t> order(raw.points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return raw.points[a][0] < raw.points[b][0]; });
  SortedPool pool;
  Pool sorted_raw;
  for (std::size_t k : order) {
    pool.values.push_back(raw.points[k][0]);
    pool.weights.push_back(raw.weights[k]);
    sorted_raw.points.push_back(raw.points[k]);
    sorted_raw.weights.push_back(raw.weights[k]);
  }
  std::sort(grid.begin(), grid.end());

  LloydResult result;
  std::vector<std::size_t> bounds;
  result.distortion_history.push_back(assign_1d(pool, grid, bounds));
  for (std::size_t it = 0; it < options.iterations; ++it) {
    std::vector<std::size_t> empty;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto values = std::span<const double>(pool.values).subspan(bounds[i], bounds[i + 1] - bounds[i]);
      const auto weights = std::span<const double>(pool.weights).subspan(bounds[i], bounds[i + 1] - bounds[i]);
      const double mass = pairwise_sum(weights);
      if (mass <= 0.0) {
        empty.push_back(i);
        continue;
      }
      std::vector<double> moments(values.size());
      for (std::size_t j = 0; j < values.size(); ++j) moments[j] = weights[j] * values[j];
      grid[i][0] = pairwise_sum(moments) / mass;
    }
    reseed_empty(sorted_raw, empty, grid);
    std::sort(grid.begin(), grid.end());
    const double previous = result.distortion_history.back();
    const double current = assign_1d(pool, grid, bounds);
    result.distortion_history.push_back(current);
    result.iterations = it + 1;
    if (previous - current <= options.relative_tolerance * previous) break;
  }
  result.grid = std::move(grid);
  return result;
}

LloydResult lloyd_general(const Pool& pool, Grid grid, const LloydOptions& options) {
  LloydResult result;
  std::vector<std::size_t> cell;
  std::vector<double> nearest_sq;
  result.distortion_history.push_back(assign(pool, grid, cell, nearest_sq));
  for (std::size_t it = 0; it < options.iterations; ++it) {
    const auto empty = update_centroids(pool, cell, grid);
    reseed_empty(pool, empty, grid);
    const double previous = result.distortion_history.back();
    const double current = assign(pool, grid, cell, nearest_sq);
    result.distortion_history.push_back(current);
    result.iterations = it + 1;
    if (previous - current <= options.relative_tolerance * previous) break;
  }
  result.grid = std::move(grid);
  return result;
}

LloydResult lloyd_exact_1d(const Analytic1D& law, std::size_t n, const LloydOptions& options) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const Seed draws = derive_seed(options.seed, 3);
  std::uint64_t next_draw = 0;
  Grid grid;
  if (options.init) {
    grid = *options.init;
  } else {
    std::vector<double> xs;
    // Distinct draws; a law with fewer than n support points never gets here.
    while (xs.size() < n && next_draw < 1000 * n) {
      const double x = law.draw(draws, next_draw++);
      if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
    }
    if (xs.size() < n) throw InvalidArgument("lloyd: could not draw N distinct initial points");
    grid = grid_1d(xs);
  }
  std::sort(grid.begin(), grid.end());

  LloydResult result;
  result.distortion_history.push_back(qerr_analytic_1d_power(law, grid, 2.0));
  for (std::size_t it = 0; it < options.iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      const double lower = i == 0 ? -kInf : 0.5 * (grid[i - 1][0] + grid[i][0]);
      const double upper = i + 1 == n ? kInf : 0.5 * (grid[i][0] + grid[i + 1][0]);
      const double mass = law.truncated_moment(0, lower, upper);
      if (mass > 0.0) {
        grid[i][0] = law.truncated_moment(1, lower, upper) / mass;
      } else {
        grid[i][0] = law.draw(draws, next_draw++);
      }
    }
    std::sort(grid.begin(), grid.end());
    const double previous = result.distortion_history.back();
    const double current = qerr_analytic_1d_power(law, grid, 2.0);
    result.distortion_history.push_back(current);
    result.iterations = it + 1;
    if (previous - current <= options.relative_tolerance * previous) break;
  }
  result.grid = std::move(grid);
  return result;
}

}  // namespace

LloydResult lloyd(const Measure& mu, std::size_t n, const LloydOptions& options) {
  if (n == 0) throw InvalidArgument("lloyd: N must be >= 1");
  const std::size_t d = mu.dimension();
  if (options.init) {
    if (options.init->size() != n) throw InvalidArgument("lloyd: init grid size differs from N");
    if (checked_dimension(*options.init) != d) throw DimensionMismatch("lloyd: init grid dimension");
  }
  if (options.exact_cells) {
    const auto* law = mu.analytic();
    if (!law) throw Unsupported("lloyd: exact cells need a one-dimensional analytic law");
    if (law->family() == Analytic1D::Family::dirac) {
      LloydResult result;
      result.grid = grid_1d({law->parameters()[0]});
      result.distortion_history.push_back(0.0);
      result.distinct_points = 1;
      return result;
    }
    auto result = lloyd_exact_1d(*law, n, options);
    result.distinct_points = distinct_points(result.grid).size();
    return result;
  }
  const Pool pool = make_pool(mu, options);

  if (mu.discrete()) {
    auto support = distinct_points(pool.points);
    if (n >= support.size()) {
      LloydResult result;
      result.distinct_points = support.size();
      result.grid = std::move(support);
      result.distortion_history.push_back(0.0);
      return result;
    }
  }

  Grid grid;
  if (options.init) {
    grid = *options.init;
  } else {
    const auto distinct = distinct_points(pool.points);
    if (distinct.size() < n) throw InvalidArgument("lloyd: pool has fewer than N distinct points");
    grid = reservoir_init(distinct, n, options.seed);
  }

  LloydResult result = d == 1 ? lloyd_1d(pool, std::move(grid), options)
                              : lloyd_general(pool, std::move(grid), options);
  result.distinct_points = distinct_points(result.grid).size();
  return result;
}

}  // namespace quantchar
