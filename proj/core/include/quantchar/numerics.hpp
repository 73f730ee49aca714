#pragma once

#include <functional>
#include <span>

namespace quantchar {

// Standard Gaussian helpers. normal_cdf is the single Gaussian CDF used by
// every closed form in the library (std::erfc based, ~1e-16 absolute).
double normal_pdf(double x);
double normal_cdf(double x);
/// Upper tail 1 - Phi(x), accurate for large x.
double normal_sf(double x);
double normal_quantile(double q);

/// Pairwise (cascade) summation; the result depends only on the order of
/// the input, never on thread count or chunking by the caller.
double pairwise_sum(std::span<const double> values);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod on [lower, upper]; either bound may be infinite.
QuadratureResult integrate(const std::function<double(double)>& f, double lower, double upper,
                           double relative_tolerance = 1e-12, unsigned max_depth = 18);

/// tanh-sinh quadrature on a finite interval, robust to integrable endpoint
/// singularities (used for quantile integrals on (0, 1)).
QuadratureResult integrate_endpoint_singular(const std::function<double(double)>& f,
                                             double lower, double upper,
                                             double relative_tolerance = 1e-12);

/// Nested adaptive quadrature of f(x, y) over a rectangle.
QuadratureResult integrate_2d(const std::function<double(double, double)>& f,
                              double x_lower, double x_upper, double y_lower, double y_upper,
                              double relative_tolerance = 1e-9);

}  // namespace quantchar
