#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "quantchar/random.hpp"
#include "quantchar/types.hpp"

namespace quantchar {

/// An isotropic l_r norm on R^d, r in [1, inf].
class NormSpec {
 public:
  /// Euclidean norm.
  constexpr NormSpec() = default;
  /// Throws InvalidArgument unless r >= 1 (r may be +infinity).
  explicit NormSpec(double r);

  static NormSpec euclidean() { return NormSpec(); }
  static NormSpec infinity();

  double r() const { return r_; }
  bool is_infinity() const;
  bool is_euclidean() const { return r_ == 2.0; }
  /// l_r balls are strictly convex exactly for 1 < r < inf.
  bool strictly_convex() const { return r_ > 1.0 && !is_infinity(); }

  friend bool operator==(NormSpec, NormSpec) = default;

 private:
  double r_ = 2.0;
};

double norm(std::span<const double> xi, NormSpec spec);
double distance(std::span<const double> a, std::span<const double> b, NormSpec spec);

/// Smallest index minimizing |xi - x_i|; ties go to the lowest index.
std::size_t nearest_index(std::span<const double> xi, const Grid& grid, NormSpec spec);

/// True iff |xi - x_i| < min_{j != i} |xi - x_j| (strict).
bool in_open_cell(std::span<const double> xi, const Grid& grid, std::size_t i, NormSpec spec);

/// Largest pairwise distance between grid points.
double grid_diameter(const Grid& grid, NormSpec spec);

/// Gaussian direction normalized to the unit sphere of `spec`. Full support on
/// the sphere but not uniform for r != 2. Pure in (seed, index).
Point sphere_point(std::size_t d, NormSpec spec, Seed seed, std::uint64_t index);

/// Explicit centers on the unit sphere whose closed unit balls cover the sphere:
///   d = 1                 {-1, 1}
///   r = inf, any d        {-e_1, e_1}
///   d = 2, r = 1          {(-1/2, 1/2), (1/2, -1/2)}
///   d = 2, 1 < r < inf    {(0,1), (+-(1-2^-r)^(1/r), -1/2)}
///   2^r >= d              {+-e_i}
/// Throws Unsupported for any other (d, r).
Grid covering_grid(std::size_t d, NormSpec spec);

struct CoveringCertificate {
  Grid centers;
  NormSpec norm;
  /// Max over sampled sphere points of the distance to the nearest center.
  double max_min_distance = 0.0;
  Point worst_point;
  std::size_t sample_count = 0;
  Seed seed{};

  static constexpr double kTolerance = 1e-9;
  bool valid() const { return max_min_distance <= 1.0 + kTolerance; }
};

/// Samples the unit sphere and certifies S within the union of closed unit balls
/// around `centers`. Throws InvalidArgument if a center is off the sphere by
/// more than 1e-9.
CoveringCertificate verify_covering(const Grid& centers, NormSpec spec, std::size_t samples,
                                    Seed seed);

/// {0, b_1 - b_0, ..., b_{d+1} - b_0} for a regular simplex (b_1..b_{d+1}) of
/// circumradius `scale` with barycenter b_0. The origin cell is bounded.
Grid bounded_cell_grid_euclidean(std::size_t d, double scale = 1.0);

struct CellExtent {
  bool bounded = true;
  /// Max over sampled directions of sup{t : x_i + t u in the open cell}, u a
  /// unit vector of `spec`. Equals the search horizon when unbounded.
  double radius = 0.0;
  std::size_t directions = 0;
};

/// Ray bisection from x_i; open Voronoi cells are star-shaped relative to their
/// generator so membership along a ray is an interval. Default horizon is
/// 1e3 * (diameter + 1).
CellExtent cell_radius(const Grid& grid, std::size_t i, NormSpec spec, std::size_t directions,
                       Seed seed, std::optional<double> t_max = std::nullopt);

}  // namespace quantchar
