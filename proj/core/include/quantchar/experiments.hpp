#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "quantchar/measures.hpp"
#include "quantchar/random.hpp"

namespace quantchar {

// ---- counterexample: X_n = exp((n/2) Z - n^2/4), W2-distance 1 from delta_0 ----

struct CounterexampleConfig {
  std::size_t level = 2;
  std::size_t n_max = 8;
  double half_width = 10.0;
  double pitch = 0.25;
  /// Nelder-Mead polishes started from the best lattice points.
  std::size_t polish_starts = 4;
  /// Lattice budget of the Q_{2,2} search between consecutive laws.
  std::size_t qdist_budget = 6561;
  Seed seed{};
};

struct CounterexampleRow {
  std::size_t n = 0;
  /// sup over the a-lattice of |e_{2,2}(mu_n, (a, a)) - sqrt(1 + a^2)|.
  double sup_discrepancy_diag = 0.0;
  /// Lattice + polish sup over [-L, L]^N of |e_{N,2}(mu_n, x) - sqrt(min|x_i|^2 + 1)|.
  double sup_discrepancy_grid = 0.0;
  /// sup over K >= 0 of K E(X_n - K)_+.
  double supK_call = 0.0;
  /// W_2(mu_n, delta_0)^2 = E X_n^2.
  double w2_to_limit_sq = 0.0;
  /// Q_{2,2} lower bound between mu_n and mu_{n-1} (0 for the first row).
  double q22_lower_to_prev = 0.0;
};

/// Limit error function sqrt(min_i |x_i|^2 + 1) at level N.
double counterexample_limit(const std::vector<double>& grid);

/// sup_a |sqrt(1 - 2 a m + a^2) - sqrt(1 + a^2)| over the whole line, where m
/// is the mean: sqrt(2 - 2 sqrt(1 - m^2)).
double diagonal_sup_bound(double mean);

/// max(1/(n sqrt(2 pi)), 2/(n (1 + rho) rho sqrt(2 pi)), exp((rho - 1/2) n^2 / 4)).
double call_sup_bound(double n, double rho = 0.25);

/// sup over K >= 0 of K E(X - K)_+ by a log-spaced scan refined by golden section.
double sup_strike_call(const Analytic1D& law);

std::vector<CounterexampleRow> run_counterexample(const CounterexampleConfig& config);

// ---- grid law: empirical law of Lloyd grids vs h^{1/3} normalized ----

struct GridLawConfig {
  /// "normal" (limit Normal(0, 3)) or "uniform" (limit Uniform(0, 1)).
  std::string family = "normal";
  std::vector<std::size_t> levels{10, 25, 50, 100};
  std::size_t lloyd_iterations = 200000;
  /// Exact cell moments of the analytic law; false runs Lloyd on a sample pool.
  bool exact_cells = true;
  std::size_t pool_size = 1000000;
  std::vector<std::uint64_t> seeds{1, 2, 3};
};

struct GridLawRow {
  std::uint64_t seed = 0;
  std::size_t level = 0;
  double kolmogorov = 0.0;
  double distortion = 0.0;
  std::size_t iterations = 0;
};

/// Kolmogorov distance between the uniform law on `points` and a CDF.
double kolmogorov_distance(std::vector<double> points, const Analytic1D& limit);

std::vector<GridLawRow> run_grid_law(const GridLawConfig& config);

// ---- equivalence: sup lattice |e(mu_n) - e(mu_inf)| against W_p(mu_n, mu_inf) ----

struct EquivalenceConfig {
  /// "shrinking-dirac", "widening-uniform" or "normal-variance".
  std::string family = "shrinking-dirac";
  std::size_t level = 2;
  /// 0 selects the family default (1, 1, 2 respectively).
  double p = 0.0;
  double half_width = 3.0;
  std::size_t lattice_per_axis = 41;
  std::vector<std::size_t> n_list{1, 2, 4, 8, 16};
};

struct EquivalenceRow {
  std::size_t n = 0;
  double sup_difference = 0.0;
  double wasserstein = 0.0;
};

/// (mu_n, mu_inf) for the named family.
std::pair<Measure, Measure> equivalence_pair(const std::string& family, std::size_t n);

std::vector<EquivalenceRow> run_equivalence(const EquivalenceConfig& config);

}  // namespace quantchar
