#pragma once

#include <cstddef>
#include <optional>

#include "quantchar/geometry.hpp"
#include "quantchar/quanterror.hpp"
#include "quantchar/types.hpp"

namespace quantchar {

// Every operator here reads the measure only through an ErrorFunction.

struct MollifierSpec {
  /// {0, a_1, ..., a_K}; the origin comes first and its open cell is bounded.
  Grid base_grid;
  double p = 2.0;
  NormSpec norm{};
  /// Integral of the profile over R^d.
  double c_phi = 0.0;
  /// Zero for quadrature, Monte Carlo standard error otherwise.
  double c_phi_std_error = 0.0;
  double epsilon = 1.0;
  /// Estimated radius of the origin cell.
  double cell_radius = 0.0;
};

struct MollifierOptions {
  std::size_t mc_samples = 400000;
  std::size_t directions = 2000;
  Seed seed{};
};

/// Euclidean norm: simplex grid with circumradius 1; other norms: origin plus
/// covering grid. The profile constant is computed by quadrature for d <= 2
/// (tolerance 1e-8) and by Monte Carlo over the cube around the origin cell
/// otherwise. Throws InvalidArgument for an unbounded origin cell or
/// epsilon <= 0, Unsupported when no covering grid is known.
MollifierSpec make_mollifier(std::size_t d, double p, NormSpec norm, double epsilon,
                             const MollifierOptions& options = {});

/// min_{a != 0} |xi - a|^p - min_a |xi - a|^p (zero outside the origin cell).
double mollifier_profile(const MollifierSpec& spec, const Point& xi);

/// (e^p(x_shift) - e^p(x_base)) / (c_phi eps^(d+p)) with
/// x_shift = (x - eps a_1, x - eps a_1, x - eps a_2, ...) and
/// x_base = (x, x - eps a_1, x - eps a_2, ...). `level` pads both tuples with
/// copies of x - eps a_K up to that arity (0 keeps |base_grid|). Throws
/// NumericalError when the result is negative beyond rounding.
double mollified_density(const ErrorFunction& handle, const MollifierSpec& spec, const Point& x,
                         std::size_t level = 0);

/// A probability read off an error function. `value` is `raw` clamped to
/// [0, 1] and `clamped` records whether that changed it.
struct ProbabilityEstimate {
  double value = 0.0;
  double raw = 0.0;
  bool clamped = false;
};

/// (1 + (e(x + h) - e(x)) / h) / 2 from e_{1,1}; default h = 1e-5 (1 + |x|).
ProbabilityEstimate cdf_from_e11(const ErrorFunction& handle, double x,
                                 std::optional<double> h = std::nullopt);

/// [e^2(a, a) - e^2(a, b)] / (2 (upper - lower)) with a = lower u, b = upper u:
/// the integral of ((xi|u) - mid)_+ for mid = (lower + upper) / 2.
double projected_call(const ErrorFunction& handle, const Point& u, double lower, double upper);

/// -(psi(m + h) - psi(m)) / h with psi from projected_call on (lambda,
/// lambda + h) and (lambda + h, lambda + 2h), m = lambda + h / 2: an estimate
/// of mu((xi|u) > m). Default h = 1e-4 (1 + |lambda|). Requires p = 2, the
/// Euclidean norm and |u| = 1.
ProbabilityEstimate survival_from_e22(const ErrorFunction& handle, const Point& u,
                                      double lambda, std::optional<double> h = std::nullopt);

/// Central second difference along (1, -1) of e^p_{2,p}(a, b), which equals
/// (d_aa + d_bb - 2 d_ab) e^p, divided by p (p - 1): an estimate of
/// e^{p-2}_{2,p-2}(a, b). Requires d = 1, even p >= 4 and a < b - 2h.
double reduce_even_p(const ErrorFunction& handle, double a, double b, double h = 1e-3);

}  // namespace quantchar
