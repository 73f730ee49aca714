#include <gtest/gtest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string command = std::string(QUANTCHAR_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) r.out.append(buffer.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("quantchar_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& body) {
    const auto path = dir_ / name;
    std::ofstream(path) << body;
    return path.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      rows.push_back(cells);
    }
    return rows;
  }

  fs::path dir_;
};

TEST_F(Cli, CoveringCertificate) {
  const auto r = run("covering --dim 2 --r 3 --samples 20000 --seed 1");
  ASSERT_EQ(r.status, 0);
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("centers").size(), 3u);
  EXPECT_TRUE(doc.at("valid").get<bool>());
  EXPECT_LE(doc.at("max_min_distance").get<double>(), 1.0 + 1e-9);
  EXPECT_EQ(json::parse(run("covering --dim 3 --r inf --samples 100").out).at("centers").size(), 2u);
}

TEST_F(Cli, CoveringUnsupportedIsUsageError) { EXPECT_EQ(run("covering --dim 5 --r 2").status, 2); }

TEST_F(Cli, QerrClosedForm) {
  const auto m = file("u.json", R"({"kind": "uniform", "params": {"a": 0, "b": 1}})");
  const auto r = run("qerr --measure " + m + " --grid 0.25,0.75 --p 2");
  ASSERT_EQ(r.status, 0);
  const auto doc = json::parse(r.out);
  EXPECT_NEAR(doc.at("value").get<double>(), std::sqrt(1.0 / 48.0), 1e-14);
  EXPECT_EQ(doc.at("method").get<std::string>(), "closed_form");
  EXPECT_FALSE(doc.contains("std_error"));
}

TEST_F(Cli, QerrMonteCarloReportsError) {
  const auto m = file("u.json", R"({"kind": "uniform", "params": {"a": 0, "b": 1}})");
  const auto doc = json::parse(run("qerr --measure " + m + " --grid 0.25,0.75 --p 2 --mc-samples 200000 --seed 3").out);
  EXPECT_EQ(doc.at("method").get<std::string>(), "monte_carlo");
  EXPECT_LE(std::abs(doc.at("value").get<double>() - std::sqrt(1.0 / 48.0)), 4.0 * doc.at("std_error").get<double>());
}

TEST_F(Cli, QerrDiscreteMultiDimensional) {
  const auto m = file("d.json", R"({"kind": "discrete", "atoms": [[0, 0], [1, 0]], "weights": [0.5, 0.5]})");
  const auto doc = json::parse(run("qerr --measure " + m + " --grid \"0,0;1,0\" --p 1").out);
  EXPECT_EQ(doc.at("value").get<double>(), 0.0);
  EXPECT_EQ(doc.at("method").get<std::string>(), "exact_discrete");
}

TEST_F(Cli, QerrBadInputs) {
  EXPECT_EQ(run("qerr --measure /nonexistent.json --grid 0").status, 2);
  const auto m = file("bad.json", R"({"kind": "uniform", "params": {"a": 1, "b": 0}})");
  EXPECT_EQ(run("qerr --measure " + m + " --grid 0").status, 2);
  EXPECT_EQ(run("qerr --grid 0").status, 2);
  EXPECT_EQ(run("no-such-command").status, 2);
}

TEST_F(Cli, LloydDiscreteSupport) {
  const auto m = file("d.json", R"({"kind": "discrete", "atoms": [0, 1]})");
  const auto doc = json::parse(run("lloyd --measure " + m + " --n 2").out);
  EXPECT_EQ(doc.at("grid").size(), 2u);
  EXPECT_EQ(doc.at("distortion").get<double>(), 0.0);
}

TEST_F(Cli, LloydUniformExactCells) {
  const auto m = file("u.json", R"({"kind": "uniform", "params": {"a": 0, "b": 1}})");
  const auto doc = json::parse(run("lloyd --measure " + m + " --n 2 --iters 5000 --exact-cells").out);
  std::vector<double> g;
  for (const auto& p : doc.at("grid")) g.push_back(p.is_array() ? p[0].get<double>() : p.get<double>());
  std::sort(g.begin(), g.end());
  EXPECT_NEAR(g[0], 0.25, 1e-6);
  EXPECT_NEAR(g[1], 0.75, 1e-6);
}

TEST_F(Cli, QDistAndWassersteinOnWorkedPair) {
  const auto u = file("u.json", R"({"kind": "uniform", "params": {"a": 0, "b": 1}})");
  const auto d = file("d.json", R"({"kind": "dirac", "params": {"c": 0.5}})");
  const auto q = json::parse(run("qdist --mu " + u + " --nu " + d + " --n 1 --p 1 --box -1,2").out);
  EXPECT_NEAR(q.at("lower_bound").get<double>(), 0.25, 1e-9);
  const auto w = run("wasserstein --mu " + u + " --nu " + d + " --p 1");
  ASSERT_EQ(w.status, 0);
  EXPECT_NEAR(std::stod(w.out), 0.25, 1e-12);
}

TEST_F(Cli, MollifyCsv) {
  const auto m = file("n.json", R"({"kind": "normal", "params": {"m": 0, "s": 1}})");
  const auto r = run("mollify --measure " + m + " --p 2 --eps 0.05 --xs -1,0,1");
  ASSERT_EQ(r.status, 0);
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "density_estimate"}));
  EXPECT_NEAR(std::stod(rows[2][1]), 0.398942, 0.004);
}

TEST_F(Cli, CdfExtractCsv) {
  const auto m = file("u.json", R"({"kind": "uniform", "params": {"a": 0, "b": 1}})");
  const auto rows = csv(run("cdf-extract --measure " + m + " --xs 0.3,2").out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0][0], "x");
  EXPECT_EQ(rows[0][1], "F_estimate");
  EXPECT_NEAR(std::stod(rows[1][1]), 0.3, 1e-4);
  EXPECT_NEAR(std::stod(rows[2][1]), 1.0, 1e-6);
}

TEST_F(Cli, CounterexampleWritesCsvAndSidecar) {
  const auto out = path("rows.csv");
  const auto r = run("counterexample --N 2 --n-max 8 --out " + out);
  EXPECT_EQ(r.status, 0);
  std::ifstream in(out);
  std::stringstream body;
  body << in.rdbuf();
  const auto rows = csv(body.str());
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0].front(), "n");
  EXPECT_EQ(rows[0].size(), 6u);
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_NEAR(std::stod(rows[k][4]), 1.0, 1e-12);
  const auto side = json::parse(std::ifstream(out + ".json"));
  EXPECT_EQ(side.at("experiment"), "counterexample");
  for (const auto& [name, ok] : side.at("assertions").items()) EXPECT_TRUE(ok.get<bool>()) << name;
}

TEST_F(Cli, GridLawSmallRun) {
  const auto out = path("law.csv");
  EXPECT_EQ(run("grid-law --family normal --Ns 10,25 --seeds 1 --out " + out).status, 0);
  const auto side = json::parse(std::ifstream(out + ".json"));
  EXPECT_TRUE(side.at("assertions").begin().value().get<bool>());
}

TEST_F(Cli, EquivalenceFamilies) {
  for (const char* family : {"shrinking-dirac", "widening-uniform", "normal-variance"}) {
    const auto r = run(std::string("equivalence --family ") + family + " --lattice 21");
    EXPECT_EQ(r.status, 0) << family;
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 6u) << family;
    EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "sup_difference", "wasserstein"}));
  }
  EXPECT_EQ(run("equivalence --family nope").status, 2);
}

}  // namespace
