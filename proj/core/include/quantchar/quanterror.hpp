#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>

#include "quantchar/geometry.hpp"
#include "quantchar/measures.hpp"
#include "quantchar/types.hpp"

namespace quantchar {

// e_{N,p}(mu, x) = (integral of min_i |xi - x_i|^p dmu)^(1/p). The `_power`
// variants return the p-th power without the root.

double qerr_discrete(const DiscreteMeasure& mu, const Grid& grid, double p, NormSpec norm = {});
double qerr_discrete_power(const DiscreteMeasure& mu, const Grid& grid, double p,
                           NormSpec norm = {});

/// True when qerr_analytic_1d has an exact evaluation for (law, p): any p for
/// Dirac and uniform laws, p = 1 or even p for normal and lognormal laws.
bool analytic_1d_supported(const Analytic1D& mu, double p);

/// Sorts the grid, collapses duplicates and integrates cell by cell over
/// (m_{k-1}, m_k] with m_k the midpoints. Throws Unsupported when
/// analytic_1d_supported is false, DimensionMismatch for multi-dimensional grids.
double qerr_analytic_1d(const Analytic1D& mu, const Grid& grid, double p);
double qerr_analytic_1d_power(const Analytic1D& mu, const Grid& grid, double p);

/// Monte Carlo estimate from samples 0..samples-1 under `seed`. The mean of
/// min_i |xi - x_i|^p is estimated first; value is its p-th root and
/// std_error is converted to that scale by the delta method,
/// se(e) = se(e^p) * e^(1-p) / p (zero when the sample variance is zero).
McEstimate qerr_mc(const Measure& mu, const Grid& grid, double p, NormSpec norm,
                   std::size_t samples, Seed seed);

enum class QErrorMethod { exact_discrete, closed_form, monte_carlo };
std::string_view to_string(QErrorMethod method);

struct QErrorValue {
  double value = 0.0;
  QErrorMethod method = QErrorMethod::exact_discrete;
  std::optional<double> std_error;
};

struct QErrorOptions {
  NormSpec norm{};
  /// Sample count used when no exact evaluation exists.
  std::size_t mc_samples = 200000;
  Seed seed{};
  /// Force Monte Carlo even when an exact path exists.
  bool force_monte_carlo = false;
};

/// Exact evaluation when available, otherwise Monte Carlo flagged as such.
QErrorValue qerr(const Measure& mu, const Grid& grid, double p, const QErrorOptions& options = {});

/// x -> e_{N,p}(mu, x) for a fixed measure, p and norm. Reconstruction code
/// only ever sees this evaluator, never the measure behind it.
class ErrorFunction {
 public:
  /// Exact evaluator for a discrete law, or an analytic law with
  /// analytic_1d_supported(law, p). Throws Unsupported otherwise.
  static ErrorFunction exact(const Measure& mu, double p, NormSpec norm = {});
  /// Common-random-number evaluator: one pool of `samples` draws is fixed at
  /// construction and every evaluation is exact on that pool.
  static ErrorFunction common_pool(const Measure& mu, double p, NormSpec norm,
                                   std::size_t samples, Seed seed);

  double operator()(const Grid& x) const;
  /// e_{N,p}(mu, x)^p.
  double power(const Grid& x) const;

  double p() const { return p_; }
  NormSpec norm() const { return norm_; }
  std::size_t dimension() const;
  bool monte_carlo() const { return pool_size_ > 0; }
  std::size_t pool_size() const { return pool_size_; }

  /// Bounding box of the support: atoms, or m +- 4s for normal laws,
  /// [0, exp(m + 4s)] for lognormal laws.
  std::pair<Point, Point> support_box() const;

 private:
  ErrorFunction(std::shared_ptr<const Measure> mu, double p, NormSpec norm, std::size_t pool)
      : mu_(std::move(mu)), p_(p), norm_(norm), pool_size_(pool) {}

  std::shared_ptr<const Measure> mu_;
  double p_;
  NormSpec norm_;
  std::size_t pool_size_;
};

}  // namespace quantchar
