#include "quantchar/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "quantchar/error.hpp"

namespace quantchar {

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_sf(double x) {
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double normal_quantile(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw InvalidArgument("normal_quantile: probability outside [0, 1]");
  }
  if (q == 0.0) return -std::numeric_limits<double>::infinity();
  if (q == 1.0) return std::numeric_limits<double>::infinity();
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q);
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 64;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

QuadratureResult integrate(const std::function<double(double)>& f, double lower, double upper,
                           double relative_tolerance, unsigned max_depth) {
  if (lower == upper) return {};
  if (lower > upper) {
    auto r = integrate(f, upper, lower, relative_tolerance, max_depth);
    return {-r.value, r.error};
  }
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, lower, upper, max_depth, relative_tolerance, &error);
  return {value, error};
}

QuadratureResult integrate_endpoint_singular(const std::function<double(double)>& f,
                                             double lower, double upper,
                                             double relative_tolerance) {
  if (lower == upper) return {};
  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(f, lower, upper, relative_tolerance, &error, &l1);
  return {value, error};
}

QuadratureResult integrate_2d(const std::function<double(double, double)>& f, double x_lower,
                              double x_upper, double y_lower, double y_upper,
                              double relative_tolerance) {
  double inner_error = 0.0;
  auto outer = [&](double x) {
    auto r = integrate([&](double y) { return f(x, y); }, y_lower, y_upper,
                       relative_tolerance * 0.1, 15);
    inner_error = std::max(inner_error, r.error);
    return r.value;
  };
  auto r = integrate(outer, x_lower, x_upper, relative_tolerance, 15);
  return {r.value, r.error + inner_error * (x_upper - x_lower)};
}

}  // namespace quantchar
