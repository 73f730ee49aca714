// quantchar: command line front end for the quantization-error library.
//
// Every subcommand writes machine-readable output (JSON or CSV) to stdout or
// to --out. Experiment subcommands exit with status 1 when one of their
// internal assertions fails and 2 on usage or input errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "quantchar/characterization.hpp"
#include "quantchar/error.hpp"
#include "quantchar/experiments.hpp"
#include "quantchar/geometry.hpp"
#include "quantchar/lloyd.hpp"
#include "quantchar/measure_io.hpp"
#include "quantchar/metrics.hpp"
#include "quantchar/quanterror.hpp"

namespace {

using nlohmann::json;
using namespace quantchar;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw InvalidArgument("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// "0.25,0.75" is a one-dimensional grid; "0,0;1,0" separates points by ';'.
Grid parse_grid(const std::string& text, std::size_t dimension) {
  Grid grid;
  if (text.find(';') == std::string::npos && dimension == 1) return grid_1d(parse_list(text));
  std::stringstream in(text);
  std::string point;
  while (std::getline(in, point, ';')) {
    if (!point.empty()) grid.push_back(parse_list(point));
  }
  return grid;
}

NormSpec parse_norm(const std::string& text) {
  if (text == "inf" || text == "infinity") return NormSpec::infinity();
  return NormSpec(std::stod(text));
}

std::string format_r(NormSpec norm) {
  if (norm.is_infinity()) return "inf";
  std::ostringstream out;
  out << norm.r();
  return out.str();
}

// Exact evaluator when one exists, otherwise a common-random-number pool.
ErrorFunction make_handle(const Measure& mu, double p, NormSpec norm, std::size_t samples,
                          Seed seed) {
  try {
    return ErrorFunction::exact(mu, p, norm);
  } catch (const Unsupported&) {
    return ErrorFunction::common_pool(mu, p, norm, samples, seed);
  }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidArgument("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_sidecar(const std::string& out, const json& doc) {
  if (out.empty()) return;
  std::ofstream side(out + ".json");
  side << doc.dump(2) << '\n';
}

struct Check {
  std::string name;
  bool passed;
};

int report_checks(const std::vector<Check>& checks, json& sidecar) {
  bool all = true;
  for (const auto& c : checks) {
    sidecar["assertions"][c.name] = c.passed;
    std::cerr << (c.passed ? "ok     " : "FAILED ") << c.name << '\n';
    all = all && c.passed;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantization error functions as characterization tools"};
  app.require_subcommand(1);
  int status = 0;

  // covering -----------------------------------------------------------------
  auto* covering = app.add_subcommand("covering", "Covering grid of the unit sphere and its certificate");
  std::size_t cov_dim = 2;
  std::string cov_r = "2";
  std::size_t cov_samples = 100000;
  std::uint64_t cov_seed = 1;
  covering->add_option("--dim", cov_dim, "Dimension")->required();
  covering->add_option("--r", cov_r, "Norm exponent (>= 1 or 'inf')")->required();
  covering->add_option("--samples", cov_samples, "Sphere samples");
  covering->add_option("--seed", cov_seed, "Seed");
  covering->callback([&] {
    const NormSpec norm = parse_norm(cov_r);
    const auto cert = verify_covering(covering_grid(cov_dim, norm), norm, cov_samples, Seed{cov_seed});
    json doc;
    doc["centers"] = cert.centers;
    doc["r"] = format_r(norm);
    doc["max_min_distance"] = cert.max_min_distance;
    doc["valid"] = cert.valid();
    doc["samples"] = cert.sample_count;
    doc["seed"] = cov_seed;
    std::cout << doc.dump(2) << '\n';
  });

  // qerr ---------------------------------------------------------------------
  auto* qerr_cmd = app.add_subcommand("qerr", "Quantization error e_{N,p}(mu, x)");
  std::string qe_measure;
  std::string qe_grid;
  double qe_p = 2.0;
  std::string qe_r = "2";
  std::size_t qe_mc = 0;
  std::uint64_t qe_seed = 1;
  qerr_cmd->add_option("--measure", qe_measure, "Measure JSON file")->required();
  qerr_cmd->add_option("--grid", qe_grid, "Grid, e.g. 0.25,0.75 or 0,0;1,0")->required();
  qerr_cmd->add_option("--p", qe_p, "Exponent p >= 1");
  qerr_cmd->add_option("--r", qe_r, "Norm exponent");
  qerr_cmd->add_option("--mc-samples", qe_mc, "Force Monte Carlo with this many samples");
  qerr_cmd->add_option("--seed", qe_seed, "Seed");
  qerr_cmd->callback([&] {
    const Measure mu = load_measure(qe_measure);
    QErrorOptions options;
    options.norm = parse_norm(qe_r);
    options.seed = Seed{qe_seed};
    if (qe_mc > 0) {
      options.mc_samples = qe_mc;
      options.force_monte_carlo = true;
    }
    const auto v = qerr(mu, parse_grid(qe_grid, mu.dimension()), qe_p, options);
    json doc{{"value", v.value}, {"method", std::string(to_string(v.method))}};
    if (v.std_error) doc["std_error"] = *v.std_error;
    std::cout << doc.dump(2) << '\n';
  });

  // lloyd --------------------------------------------------------------------
  auto* lloyd_cmd = app.add_subcommand("lloyd", "Quadratic Lloyd iteration");
  std::string ll_measure;
  std::size_t ll_n = 2;
  std::size_t ll_iters = 100;
  std::size_t ll_pool = 100000;
  std::uint64_t ll_seed = 1;
  bool ll_exact = false;
  lloyd_cmd->add_option("--measure", ll_measure, "Measure JSON file")->required();
  lloyd_cmd->add_option("--n", ll_n, "Grid size N")->required();
  lloyd_cmd->add_option("--iters", ll_iters, "Maximum iterations");
  lloyd_cmd->add_option("--pool", ll_pool, "Sample pool size");
  lloyd_cmd->add_option("--seed", ll_seed, "Seed");
  lloyd_cmd->add_flag("--exact-cells", ll_exact, "Exact cell moments (1D analytic laws)");
  lloyd_cmd->callback([&] {
    LloydOptions options;
    options.iterations = ll_iters;
    options.pool_size = ll_pool;
    options.seed = Seed{ll_seed};
    options.exact_cells = ll_exact;
    const auto r = lloyd(load_measure(ll_measure), ll_n, options);
    json doc{{"grid", r.grid},
             {"distortion", r.distortion_history.back()},
             {"distortion_history", r.distortion_history},
             {"iterations", r.iterations},
             {"distinct_points", r.distinct_points}};
    std::cout << doc.dump(2) << '\n';
  });

  // qdist --------------------------------------------------------------------
  auto* qdist_cmd = app.add_subcommand("qdist", "Lower bound on sup_x |e(mu, x) - e(nu, x)|");
  std::string qd_mu;
  std::string qd_nu;
  std::size_t qd_n = 1;
  double qd_p = 1.0;
  std::string qd_box;
  std::size_t qd_restarts = 4;
  std::size_t qd_budget = 20000;
  std::size_t qd_mc = 100000;
  std::uint64_t qd_seed = 1;
  qdist_cmd->add_option("--mu", qd_mu, "First measure JSON")->required();
  qdist_cmd->add_option("--nu", qd_nu, "Second measure JSON")->required();
  qdist_cmd->add_option("--n", qd_n, "Level N");
  qdist_cmd->add_option("--p", qd_p, "Exponent p");
  qdist_cmd->add_option("--box", qd_box, "Search interval lo,hi (every coordinate)");
  qdist_cmd->add_option("--restarts", qd_restarts, "Local polishes");
  qdist_cmd->add_option("--budget", qd_budget, "Lattice point budget");
  qdist_cmd->add_option("--mc-samples", qd_mc, "Pool size when no exact evaluator exists");
  qdist_cmd->add_option("--seed", qd_seed, "Seed");
  qdist_cmd->callback([&] {
    const Measure mu = load_measure(qd_mu);
    const Measure nu = load_measure(qd_nu);
    QDistOptions options;
    options.level = qd_n;
    options.restarts = qd_restarts;
    options.lattice_budget = qd_budget;
    options.seed = Seed{qd_seed};
    if (!qd_box.empty()) {
      const auto bounds = parse_list(qd_box);
      if (bounds.size() != 2) throw InvalidArgument("--box expects lo,hi");
      options.box = std::pair<Point, Point>{Point(mu.dimension(), bounds[0]),
                                            Point(mu.dimension(), bounds[1])};
    }
    const auto r = qdist(make_handle(mu, qd_p, {}, qd_mc, derive_seed(Seed{qd_seed}, 1)),
                         make_handle(nu, qd_p, {}, qd_mc, derive_seed(Seed{qd_seed}, 2)), options);
    json doc{{"lower_bound", r.lower_bound},
             {"argmax_grid", r.argmax_grid},
             {"evaluations", r.evaluations},
             {"search_box", {r.search_box.first, r.search_box.second}},
             {"converged_restarts", r.converged_restarts},
             {"pitch", r.pitch}};
    std::cout << doc.dump(2) << '\n';
  });

  // wasserstein --------------------------------------------------------------
  auto* wass = app.add_subcommand("wasserstein", "W_p between one-dimensional laws");
  std::string w_mu;
  std::string w_nu;
  double w_p = 1.0;
  wass->add_option("--mu", w_mu, "First measure JSON")->required();
  wass->add_option("--nu", w_nu, "Second measure JSON")->required();
  wass->add_option("--p", w_p, "Exponent p");
  wass->callback([&] {
    std::cout << std::setprecision(17) << wasserstein_1d(load_measure(w_mu), load_measure(w_nu), w_p)
              << '\n';
  });

  // mollify ------------------------------------------------------------------
  auto* mollify = app.add_subcommand("mollify", "Density of the mollified law from e_{N,p}");
  std::string mo_measure;
  double mo_p = 2.0;
  double mo_eps = 0.05;
  std::string mo_xs;
  std::size_t mo_mc = 400000;
  std::uint64_t mo_seed = 1;
  mollify->add_option("--measure", mo_measure, "Measure JSON file")->required();
  mollify->add_option("--p", mo_p, "Exponent p");
  mollify->add_option("--eps", mo_eps, "Bandwidth epsilon");
  mollify->add_option("--xs", mo_xs, "Evaluation points x0,x1,...")->required();
  mollify->add_option("--mc-samples", mo_mc, "Pool size when no exact evaluator exists");
  mollify->add_option("--seed", mo_seed, "Seed");
  mollify->callback([&] {
    const Measure mu = load_measure(mo_measure);
    if (mu.dimension() != 1) throw InvalidArgument("mollify: --xs takes one-dimensional points");
    const auto spec = make_mollifier(1, mo_p, {}, mo_eps);
    const auto handle = make_handle(mu, mo_p, {}, mo_mc, Seed{mo_seed});
    std::cout << "x,density_estimate\n" << std::setprecision(12);
    for (double x : parse_list(mo_xs)) std::cout << x << ',' << mollified_density(handle, spec, {x}) << '\n';
  });

  // cdf-extract --------------------------------------------------------------
  auto* cdf_cmd = app.add_subcommand("cdf-extract", "CDF from the right derivative of e_{1,1}");
  std::string cd_measure;
  std::string cd_xs;
  cdf_cmd->add_option("--measure", cd_measure, "Measure JSON file")->required();
  cdf_cmd->add_option("--xs", cd_xs, "Evaluation points")->required();
  cdf_cmd->callback([&] {
    const auto handle = ErrorFunction::exact(load_measure(cd_measure), 1.0);
    std::cout << "x,F_estimate,raw,clamped\n" << std::setprecision(12);
    for (double x : parse_list(cd_xs)) {
      const auto f = cdf_from_e11(handle, x);
      std::cout << x << ',' << f.value << ',' << f.raw << ',' << (f.clamped ? 1 : 0) << '\n';
    }
  });

  // counterexample -----------------------------------------------------------
  auto* counter = app.add_subcommand("counterexample", "Q-Cauchy lognormal sequence that is not W2-Cauchy");
  CounterexampleConfig cx;
  std::uint64_t cx_seed = 1;
  std::string cx_out;
  counter->add_option("--N", cx.level, "Quantization level (>= 2)");
  counter->add_option("--n-max", cx.n_max, "Largest sequence index");
  counter->add_option("--L", cx.half_width, "Lattice half width");
  counter->add_option("--pitch", cx.pitch, "Lattice pitch");
  counter->add_option("--seed", cx_seed, "Seed");
  counter->add_option("--out", cx_out, "CSV path (stdout when empty)");
  counter->callback([&] {
    cx.seed = Seed{cx_seed};
    const auto rows = run_counterexample(cx);
    Output out(cx_out);
    auto& os = out.stream();
    os << "n,sup_discrepancy_diag,sup_discrepancy_grid,supK_call,w2_to_limit_sq,q22_lower_to_prev\n"
       << std::setprecision(12);
    for (const auto& r : rows) {
      os << r.n << ',' << r.sup_discrepancy_diag << ',' << r.sup_discrepancy_grid << ','
         << r.supK_call << ',' << r.w2_to_limit_sq << ',' << r.q22_lower_to_prev << '\n';
    }
    std::vector<Check> checks;
    bool diag = true;
    bool trend = true;
    bool calls = true;
    bool w2 = true;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto& r = rows[k];
      const double n = static_cast<double>(r.n);
      diag = diag && r.sup_discrepancy_diag <= diagonal_sup_bound(std::exp(-n * n / 8.0)) + 1e-12;
      if (r.n > 3 && k > 0) trend = trend && r.sup_discrepancy_grid <= 1.05 * rows[k - 1].sup_discrepancy_grid;
      if (r.n >= 3) calls = calls && r.supK_call <= call_sup_bound(n);
      if (k > 0) calls = calls && r.supK_call < rows[k - 1].supK_call;
      w2 = w2 && std::abs(r.w2_to_limit_sq - 1.0) <= 1e-12;
    }
    checks.push_back({"diagonal sup within sqrt(2 - 2 sqrt(1 - E X_n^2))", diag});
    checks.push_back({"grid sup non-increasing (5% slack) from n = 3", trend});
    checks.push_back({"sup_K K E(X_n - K)_+ decreasing and under the three-case bound", calls});
    checks.push_back({"W2(mu_n, delta_0)^2 = 1", w2});
    json side{{"experiment", "counterexample"},
              {"config", {{"N", cx.level}, {"n_max", cx.n_max}, {"L", cx.half_width},
                          {"pitch", cx.pitch}, {"seed", cx_seed}}},
              {"columns", {"n", "sup_discrepancy_diag", "sup_discrepancy_grid", "supK_call",
                           "w2_to_limit_sq", "q22_lower_to_prev"}}};
    status = report_checks(checks, side);
    write_sidecar(cx_out, side);
  });

  // grid-law -----------------------------------------------------------------
  auto* law_cmd = app.add_subcommand("grid-law", "Empirical law of Lloyd grids against the h^(1/3) limit");
  GridLawConfig gl;
  std::string gl_levels = "10,25,50,100";
  std::string gl_seeds = "1,2,3";
  bool gl_pool = false;
  std::string gl_out;
  law_cmd->add_option("--family", gl.family, "normal or uniform");
  law_cmd->add_option("--Ns", gl_levels, "Grid sizes");
  law_cmd->add_option("--iters", gl.lloyd_iterations, "Maximum Lloyd iterations");
  law_cmd->add_option("--pool-size", gl.pool_size, "Pool size with --pool");
  law_cmd->add_flag("--pool", gl_pool, "Lloyd on a sample pool instead of exact cells");
  law_cmd->add_option("--seeds", gl_seeds, "Seeds");
  law_cmd->add_option("--out", gl_out, "CSV path (stdout when empty)");
  law_cmd->callback([&] {
    gl.levels.clear();
    for (double v : parse_list(gl_levels)) gl.levels.push_back(static_cast<std::size_t>(v));
    gl.seeds.clear();
    for (double v : parse_list(gl_seeds)) gl.seeds.push_back(static_cast<std::uint64_t>(v));
    gl.exact_cells = !gl_pool;
    const auto rows = run_grid_law(gl);
    Output out(gl_out);
    auto& os = out.stream();
    os << "seed,N,kolmogorov,distortion,iterations\n" << std::setprecision(12);
    for (const auto& r : rows)
      os << r.seed << ',' << r.level << ',' << r.kolmogorov << ',' << r.distortion << ',' << r.iterations << '\n';
    bool decreasing = true;
    for (std::size_t k = 1; k < rows.size(); ++k)
      if (rows[k].seed == rows[k - 1].seed) decreasing = decreasing && rows[k].kolmogorov < rows[k - 1].kolmogorov;
    json side{{"experiment", "grid-law"},
              {"config", {{"family", gl.family}, {"Ns", gl.levels}, {"iters", gl.lloyd_iterations},
                          {"pool", gl_pool}, {"pool_size", gl.pool_size}, {"seeds", gl.seeds}}},
              {"columns", {"seed", "N", "kolmogorov", "distortion", "iterations"}}};
    status = report_checks({{"Kolmogorov distance decreases in N for every seed", decreasing}}, side);
    write_sidecar(gl_out, side);
  });

  // equivalence --------------------------------------------------------------
  auto* eq_cmd = app.add_subcommand("equivalence", "sup |e(mu_n) - e(mu)| against W_p(mu_n, mu)");
  EquivalenceConfig eq;
  std::string eq_ns = "1,2,4,8,16";
  std::string eq_out;
  eq_cmd->add_option("--family", eq.family, "shrinking-dirac, widening-uniform or normal-variance");
  eq_cmd->add_option("--N", eq.level, "Level N");
  eq_cmd->add_option("--p", eq.p, "Exponent p (0 = family default)");
  eq_cmd->add_option("--L", eq.half_width, "Lattice half width");
  eq_cmd->add_option("--lattice", eq.lattice_per_axis, "Lattice points per axis");
  eq_cmd->add_option("--ns", eq_ns, "Sequence indices");
  eq_cmd->add_option("--out", eq_out, "CSV path (stdout when empty)");
  eq_cmd->callback([&] {
    eq.n_list.clear();
    for (double v : parse_list(eq_ns)) eq.n_list.push_back(static_cast<std::size_t>(v));
    const auto rows = run_equivalence(eq);
    Output out(eq_out);
    auto& os = out.stream();
    os << "n,sup_difference,wasserstein\n" << std::setprecision(12);
    bool dominated = true;
    for (const auto& r : rows) {
      os << r.n << ',' << r.sup_difference << ',' << r.wasserstein << '\n';
      dominated = dominated && r.sup_difference <= r.wasserstein + 1e-9;
    }
    const bool decay = rows.size() < 2 || (rows.back().sup_difference < rows.front().sup_difference &&
                                           rows.back().wasserstein < rows.front().wasserstein);
    json side{{"experiment", "equivalence"},
              {"config", {{"family", eq.family}, {"N", eq.level}, {"p", eq.p}, {"L", eq.half_width},
                          {"lattice", eq.lattice_per_axis}, {"ns", eq.n_list}}},
              {"columns", {"n", "sup_difference", "wasserstein"}}};
    status = report_checks({{"sup difference <= W_p + 1e-9", dominated},
                            {"sup difference and W_p decay jointly", decay}},
                           side);
    write_sidecar(eq_out, side);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return status;
}
