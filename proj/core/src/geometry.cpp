#include "quantchar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "quantchar/error.hpp"

namespace quantchar {

Grid grid_1d(const std::vector<double>& values) {
  Grid grid;
  grid.reserve(values.size());
  for (double v : values) grid.push_back(Point{v});
  return grid;
}

std::size_t checked_dimension(const Grid& grid) {
  if (grid.empty()) throw InvalidArgument("grid is empty");
  const std::size_t d = grid.front().size();
  if (d == 0) throw InvalidArgument("grid points must have dimension >= 1");
  for (const auto& x : grid) {
    if (x.size() != d) throw DimensionMismatch("grid points have different dimensions");
    for (double c : x) {
      if (!std::isfinite(c)) throw InvalidArgument("grid point has a non-finite coordinate");
    }
  }
  return d;
}

NormSpec::NormSpec(double r) : r_(r) {
  if (!(r >= 1.0)) throw InvalidArgument("l_r norm requires r >= 1, got " + std::to_string(r));
}

NormSpec NormSpec::infinity() { return NormSpec(std::numeric_limits<double>::infinity()); }

bool NormSpec::is_infinity() const { return std::isinf(r_); }

double norm(std::span<const double> xi, NormSpec spec) {
  const double r = spec.r();
  if (spec.is_infinity()) {
    double m = 0.0;
    for (double c : xi) m = std::max(m, std::abs(c));
    return m;
  }
  if (xi.size() == 1) return std::abs(xi[0]);
  if (r == 1.0) {
    double s = 0.0;
    for (double c : xi) s += std::abs(c);
    return s;
  }
  if (r == 2.0) {
    double s = 0.0;
    for (double c : xi) s += c * c;
    return std::sqrt(s);
  }
  // Scale by the max coordinate so large r does not overflow.
  double m = 0.0;
  for (double c : xi) m = std::max(m, std::abs(c));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double c : xi) s += std::pow(std::abs(c) / m, r);
  return m * std::pow(s, 1.0 / r);
}

double distance(std::span<const double> a, std::span<const double> b, NormSpec spec) {
  if (a.size() != b.size()) throw DimensionMismatch("distance: dimension mismatch");
  if (a.size() == 1) return std::abs(a[0] - b[0]);
  thread_local std::vector<double> diff;
  diff.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return norm(diff, spec);
}

std::size_t nearest_index(std::span<const double> xi, const Grid& grid, NormSpec spec) {
  if (grid.empty()) throw InvalidArgument("nearest_index: empty grid");
  std::size_t best = 0;
  double best_distance = distance(xi, grid[0], spec);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double dist = distance(xi, grid[i], spec);
    if (dist < best_distance) {
      best_distance = dist;
      best = i;
    }
  }
  return best;
}

bool in_open_cell(std::span<const double> xi, const Grid& grid, std::size_t i, NormSpec spec) {
  if (i >= grid.size()) throw InvalidArgument("in_open_cell: index out of range");
  const double own = distance(xi, grid[i], spec);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (j != i && distance(xi, grid[j], spec) <= own) return false;
  }
  return true;
}

double grid_diameter(const Grid& grid, NormSpec spec) {
  double diameter = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i + 1; j < grid.size(); ++j)
      diameter = std::max(diameter, distance(grid[i], grid[j], spec));
  return diameter;
}

Point sphere_point(std::size_t d, NormSpec spec, Seed seed, std::uint64_t index) {
  CounterRng rng(seed, index);
  Point p(d);
  double n = 0.0;
  while (n == 0.0) {
    for (auto& c : p) c = rng.normal();
    n = norm(p, spec);
  }
  for (auto& c : p) c /= n;
  return p;
}

Grid covering_grid(std::size_t d, NormSpec spec) {
  if (d == 0) throw InvalidArgument("covering_grid: dimension must be >= 1");
  const double r = spec.r();
  if (d == 1) return grid_1d({-1.0, 1.0});

  auto unit = [d](std::size_t axis, double sign) {
    Point p(d, 0.0);
    p[axis] = sign;
    return p;
  };
  if (spec.is_infinity()) return {unit(0, -1.0), unit(0, 1.0)};
  if (d == 2 && r == 1.0) return {{-0.5, 0.5}, {0.5, -0.5}};
  if (d == 2) {
    const double x = std::pow(1.0 - std::pow(2.0, -r), 1.0 / r);
    return {{0.0, 1.0}, {x, -0.5}, {-x, -0.5}};
  }
  if (std::pow(2.0, r) >= static_cast<double>(d)) {
    Grid grid;
    for (std::size_t i = 0; i < d; ++i) {
      grid.push_back(unit(i, 1.0));
      grid.push_back(unit(i, -1.0));
    }
    return grid;
  }
  throw Unsupported("covering_grid: no construction known for d=" + std::to_string(d) +
                    ", r=" + std::to_string(r));
}

CoveringCertificate verify_covering(const Grid& centers, NormSpec spec, std::size_t samples,
                                    Seed seed) {
  const std::size_t d = checked_dimension(centers);
  for (const auto& c : centers) {
    if (std::abs(norm(c, spec) - 1.0) > 1e-9)
      throw InvalidArgument("verify_covering: center is not on the unit sphere");
  }
  CoveringCertificate cert{centers, spec, 0.0, Point(d, 0.0), samples, seed};
  for (std::size_t k = 0; k < samples; ++k) {
    const Point s = sphere_point(d, spec, seed, k);
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& c : centers) nearest = std::min(nearest, distance(s, c, spec));
    if (nearest > cert.max_min_distance) {
      cert.max_min_distance = nearest;
      cert.worst_point = s;
    }
  }
  return cert;
}

Grid bounded_cell_grid_euclidean(std::size_t d, double scale) {
  if (d == 0) throw InvalidArgument("bounded_cell_grid_euclidean: dimension must be >= 1");
  if (!(scale > 0.0)) throw InvalidArgument("bounded_cell_grid_euclidean: scale must be > 0");
  const std::size_t m = d + 1;
  // Centered standard simplex e_i - (1/m) 1 lives in the hyperplane sum = 0.
  std::vector<std::vector<double>> vertices(m, std::vector<double>(m, -1.0 / static_cast<double>(m)));
  for (std::size_t i = 0; i < m; ++i) vertices[i][i] += 1.0;

  // Orthonormal basis of the hyperplane by Gram-Schmidt on the first d vertices.
  std::vector<std::vector<double>> basis;
  for (std::size_t i = 0; i < d; ++i) {
    auto v = vertices[i];
    for (const auto& b : basis) {
      double dot = 0.0;
      for (std::size_t k = 0; k < m; ++k) dot += v[k] * b[k];
      for (std::size_t k = 0; k < m; ++k) v[k] -= dot * b[k];
    }
    double n = 0.0;
    for (double c : v) n += c * c;
    n = std::sqrt(n);
    for (auto& c : v) c /= n;
    basis.push_back(std::move(v));
  }

  const double circumradius = std::sqrt(static_cast<double>(d) / static_cast<double>(m));
  Grid grid{Point(d, 0.0)};
  for (const auto& v : vertices) {
    Point p(d);
    for (std::size_t j = 0; j < d; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < m; ++k) dot += v[k] * basis[j][k];
      p[j] = -dot * scale / circumradius;
    }
    grid.push_back(std::move(p));
  }
  return grid;
}

CellExtent cell_radius(const Grid& grid, std::size_t i, NormSpec spec, std::size_t directions,
                       Seed seed, std::optional<double> t_max) {
  const std::size_t d = checked_dimension(grid);
  if (i >= grid.size()) throw InvalidArgument("cell_radius: index out of range");
  if (directions == 0) throw InvalidArgument("cell_radius: need at least one direction");
  const double horizon = t_max.value_or(1e3 * (grid_diameter(grid, spec) + 1.0));
  if (!(horizon > 0.0)) throw InvalidArgument("cell_radius: t_max must be > 0");

  const Point& center = grid[i];
  CellExtent extent{true, 0.0, directions};
  // A duplicated generator has an empty open cell.
  if (!in_open_cell(center, grid, i, spec)) return extent;

  Point probe(d);
  // Exact ties (common under l_1 and l_inf) must not pass for strict membership
  // through rounding, so the strict inequality carries a relative margin.
  auto inside = [&](const Point& u, double t) {
    for (std::size_t k = 0; k < d; ++k) probe[k] = center[k] + t * u[k];
    const double own = distance(probe, center, spec);
    const double margin = 1e-12 * (1.0 + own);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (j != i && distance(probe, grid[j], spec) <= own + margin) return false;
    }
    return true;
  };

  for (std::size_t k = 0; k < directions; ++k) {
    const Point u = sphere_point(d, spec, seed, k);
    if (inside(u, horizon)) {
      extent.bounded = false;
      extent.radius = horizon;
      return extent;
    }
    double lo = 0.0;
    double hi = horizon;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (inside(u, mid) ? lo : hi) = mid;
    }
    extent.radius = std::max(extent.radius, hi);
  }
  return extent;
}

}  // namespace quantchar
