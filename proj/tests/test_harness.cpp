// Copyright 2026 The cvarqo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvarqo/harness.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "cvarqo/fixtures.hpp"

namespace cvarqo {
namespace {

namespace fs = std::filesystem;

StateVector two_qubit(std::span<const double> theta) { return two_qubit_state(theta[0]); }

OptimizerConfig start_at(double theta, int budget) {
  OptimizerConfig c;
  c.max_evaluations = budget;
  c.initial_point = {theta};
  return c;
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.problems = {ProblemClass::MaxCut};
  c.sizes = {4};
  c.instances_per_size = 2;
  c.alphas = {0.25, 1.0};
  c.vqe_depths = {1};
  c.qaoa_depths = {1};
  c.iteration_budget_per_qubit = 10;
  c.master_seed = 5;
  c.threads = 1;
  return c;
}

std::string csv_of(const SweepResult& r) {
  std::ostringstream out;
  write_sweep_csv(out, r.rows);
  return out.str();
}

SweepRow row(std::uint64_t seed, std::size_t eval, double overlap, int n = 4) {
  return {"maxcut", n, seed, "vqe", 1, 0.5, eval, static_cast<double>(eval) / n, 0.0, overlap};
}

TEST(Harness, TwoQubitCvarHalfFindsGroundMass) {
  const RunTrace t =
      optimize_cvar(two_qubit, two_qubit_hamiltonian(), CvarConfig{0.5, std::nullopt}, start_at(2.0, 200));
  EXPECT_NEAR(t.best_value, 0.0, 1e-6);
  const auto& last = t.records.back();
  EXPECT_GE(last.overlap, 0.49);
  EXPECT_EQ(best_observed_solution(t).first, 0u);
}

TEST(Harness, TwoQubitExpectationHasNoGradient) {
  const RunTrace t =
      optimize_cvar(two_qubit, two_qubit_hamiltonian(), CvarConfig{1.0, std::nullopt}, start_at(1.3, 200));
  EXPECT_EQ(t.best_point, ParameterVector{1.3});
  EXPECT_EQ(t.final_point, ParameterVector{1.3});
  EXPECT_NEAR(t.records.front().overlap, std::pow(std::cos(0.65), 2) / 2, 1e-15);
  for (const auto& r : t.records) EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(Harness, SampledModeRecordsSampledBitstrings) {
  CvarConfig cvar{0.25, SampledMode{512, 9}};
  const RunTrace t = optimize_cvar(two_qubit, two_qubit_hamiltonian(), cvar, start_at(1.0, 20));
  for (const auto& r : t.records) {
    ASSERT_TRUE(r.best_bitstring.has_value());
    EXPECT_GE(r.overlap, 0.0);
    EXPECT_LE(r.overlap, 1.0);
  }
}

TEST(Harness, RunSingleOnMaxCut) {
  InstanceSpec spec;
  spec.num_qubits = 5;
  spec.seed = 3;
  const QuboProblem q = generate(spec).qubo;
  RunOptions options;
  options.cvar.alpha = 0.25;
  options.max_evaluations = 250;
  options.initial_point.assign(10, 0.4);
  const RunTrace t = run_single(q, options);
  const double ground = ising_to_hamiltonian(qubo_to_ising(q)).ground_value();
  for (const auto& r : t.records) {
    EXPECT_GE(r.value, ground - 1e-9);
    EXPECT_GE(r.overlap, 0.0);
    EXPECT_LE(r.overlap, 1.0);
  }
  options.initial_point.assign(3, 0.0);
  EXPECT_THROW(run_single(q, options), std::invalid_argument);
}

TEST(Harness, PlanOrderAndQaoaDepthCap) {
  ExperimentConfig c = small_config();
  c.sizes = {10, 12};
  c.instances_per_size = 1;
  c.alphas = {0.5};
  c.vqe_depths = {};
  c.qaoa_depths = {1, 3};
  auto tasks = plan_sweep(c);
  ASSERT_EQ(tasks.size(), 3u);
  EXPECT_EQ(tasks[2].n, 12);
  EXPECT_EQ(tasks[2].depth, 1);
  c.full_grid = true;
  EXPECT_EQ(plan_sweep(c).size(), 4u);
}

TEST(Harness, SingleRunSweep) {
  ExperimentConfig c = small_config();
  c.instances_per_size = 1;
  c.alphas = {0.5};
  c.qaoa_depths = {};
  const SweepResult r = run_sweep(c);
  ASSERT_FALSE(r.rows.empty());
  EXPECT_TRUE(r.failures.empty());
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    EXPECT_EQ(r.rows[k].eval, k + 1);
    EXPECT_EQ(r.rows[k].seed, instance_seed(5, ProblemClass::MaxCut, 4, 0));
    EXPECT_DOUBLE_EQ(r.rows[k].norm_iter, (k + 1) / 4.0);
  }
  EXPECT_LE(r.rows.size(), 40u);
}

TEST(Harness, SweepIsDeterministicAcrossThreadCounts) {
  ExperimentConfig c = small_config();
  const std::string a = csv_of(run_sweep(c));
  c.threads = 3;
  EXPECT_EQ(csv_of(run_sweep(c)), a);
  c.master_seed = 6;
  EXPECT_NE(csv_of(run_sweep(c)), a);
}

TEST(Harness, SampledSweepIsDeterministic) {
  ExperimentConfig c = small_config();
  c.shots = 256;
  EXPECT_EQ(csv_of(run_sweep(c)), csv_of(run_sweep(c)));
}

TEST(Harness, InvalidInstancesBecomeFailures) {
  ExperimentConfig c = small_config();
  c.problems = {ProblemClass::Max3Sat, ProblemClass::MaxCut};
  const SweepResult r = run_sweep(c);
  EXPECT_EQ(r.failures.size(), 8u);
  for (const auto& f : r.failures) EXPECT_EQ(f.problem, "max3sat");
  EXPECT_FALSE(r.rows.empty());
}

TEST(Harness, ConfigValidation) {
  ExperimentConfig c = small_config();
  c.problems.clear();
  EXPECT_THROW(run_sweep(c), std::invalid_argument);
  c = small_config();
  c.alphas = {0.0};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config();
  c.qaoa_depths = {0};
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Harness, ConfigJsonRoundTrip) {
  ExperimentConfig c = small_config();
  c.shots = 1024;
  c.initial_point = InitialPoint::Zero;
  const ExperimentConfig back = nlohmann::json(c).get<ExperimentConfig>();
  EXPECT_EQ(back.problems, c.problems);
  EXPECT_EQ(back.alphas, c.alphas);
  EXPECT_EQ(back.shots, c.shots);
  EXPECT_EQ(back.initial_point, InitialPoint::Zero);
  const auto defaults = nlohmann::json::parse(R"({"problems": ["portfolio"]})").get<ExperimentConfig>();
  EXPECT_EQ(defaults.instances_per_size, 10);
  EXPECT_EQ(defaults.alphas.size(), 7u);
  EXPECT_EQ(defaults.sizes, (std::vector<int>{6, 8, 10}));
  EXPECT_FALSE(defaults.shots.has_value());
}

TEST(Harness, CsvRoundTrip) {
  const SweepResult r = run_sweep(small_config());
  std::stringstream buffer;
  write_sweep_csv(buffer, r.rows);
  const auto back = read_sweep_csv(buffer);
  ASSERT_EQ(back.size(), r.rows.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    EXPECT_EQ(back[k].objective, r.rows[k].objective);
    EXPECT_EQ(back[k].overlap, r.rows[k].overlap);
    EXPECT_EQ(back[k].alpha, r.rows[k].alpha);
    EXPECT_EQ(back[k].seed, r.rows[k].seed);
  }
  std::stringstream bad("problem,n\nmaxcut,4\n");
  EXPECT_THROW(read_sweep_csv(bad), std::runtime_error);
  std::stringstream short_line(std::string(kSweepCsvHeader) + "\nmaxcut,4,1\n");
  EXPECT_THROW(read_sweep_csv(short_line), std::runtime_error);
}

TEST(Harness, FormatDoubleIsShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.5), "2.5");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Harness, TimeToThreshold) {
  const std::vector<SweepRow> rows{row(1, 1, 0.0), row(1, 2, 0.05), row(1, 3, 0.02)};
  EXPECT_DOUBLE_EQ(time_to_threshold(rows, 0.01), 0.5);
  EXPECT_EQ(time_to_threshold(rows, 0.1), kNeverReached);
}

TEST(Harness, SingleInstanceCurveStepsOnce) {
  const std::vector<SweepRow> rows{row(1, 1, 0.0), row(1, 2, 0.0), row(1, 3, 0.5), row(1, 4, 0.1)};
  const auto curves = aggregate_fraction_curves(rows, 0.2);
  ASSERT_EQ(curves.size(), 1u);
  const auto& c = curves[0];
  EXPECT_EQ(c.instances, 1u);
  EXPECT_EQ(c.reached, 1u);
  EXPECT_EQ(c.fraction_at(0.5), 0.0);
  EXPECT_EQ(c.fraction_at(0.75), 1.0);
  EXPECT_EQ(c.final_fraction(), 1.0);
  EXPECT_DOUBLE_EQ(c.median_time, 0.75);
}

TEST(Harness, CurveStaysZeroWhenNobodyReaches) {
  const std::vector<SweepRow> rows{row(1, 1, 0.0), row(2, 1, 0.001), row(2, 2, 0.002)};
  const auto c = aggregate_fraction_curves(rows, 0.01).at(0);
  EXPECT_EQ(c.instances, 2u);
  for (const auto& pt : c.points) EXPECT_EQ(pt.fraction, 0.0);
  EXPECT_EQ(c.median_time, kNeverReached);
  EXPECT_THROW(aggregate_fraction_curves(rows, 1.0), std::invalid_argument);
}

TEST(Harness, CurvesAreNondecreasing) {
  const SweepResult r = run_sweep(small_config());
  for (double threshold : {0.01, 0.1, 0.5}) {
    for (const auto& c : aggregate_fraction_curves(r.rows, threshold)) {
      for (std::size_t k = 1; k < c.points.size(); ++k) {
        EXPECT_GE(c.points[k].fraction, c.points[k - 1].fraction);
        EXPECT_GE(c.points[k].norm_iter, c.points[k - 1].norm_iter);
      }
    }
  }
}

TEST(Harness, MedianOrdersNeverReachedLast) {
  EXPECT_EQ(median_time({1.0, kNeverReached, 3.0}), 3.0);
  EXPECT_EQ(median_time({1.0, kNeverReached}), kNeverReached);
  EXPECT_EQ(median_time({1.0, 2.0}), 1.5);
  EXPECT_EQ(median_time({}), kNeverReached);
}

TEST(Harness, MeanOverlapCarriesLastValueForward) {
  // Run 1 stops after eval 4 (norm_iter 1); run 2 continues to norm_iter 2.
  std::vector<SweepRow> rows{row(1, 1, 0.2), row(1, 4, 0.6)};
  for (std::size_t e = 1; e <= 8; ++e) rows.push_back(row(2, e, 0.1 * e));
  const auto curves = mean_overlap_curves(rows);
  ASSERT_EQ(curves.size(), 1u);
  ASSERT_EQ(curves[0].points.size(), 2u);
  EXPECT_NEAR(curves[0].points[0].fraction, (0.6 + 0.4) / 2, 1e-15);
  EXPECT_NEAR(curves[0].points[1].fraction, (0.6 + 0.8) / 2, 1e-15);
}

TEST(Harness, ExactSweepRowsRespectGroundTruth) {
  ExperimentConfig c = small_config();
  c.problems = {ProblemClass::Portfolio, ProblemClass::Partition};
  const SweepResult r = run_sweep(c);
  for (const auto& row : r.rows) {
    InstanceSpec spec;
    spec.problem = problem_from_string(row.problem);
    spec.num_qubits = row.n;
    spec.seed = row.seed;
    const double ground = ising_to_hamiltonian(qubo_to_ising(generate(spec).qubo)).ground_value();
    ASSERT_GE(row.objective, ground - 1e-9);
    ASSERT_GE(row.overlap, 0.0);
    ASSERT_LE(row.overlap, 1.0);
  }
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cvarqo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int cli(const std::string& args) {
    const std::string command = std::string(CVARQO_CLI_PATH) + " " + args + " 2>" +
                                (dir_ / "stderr.txt").string() + " >" + (dir_ / "stdout.txt").string();
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
  }
  std::string read(const std::string& name) {
    std::ifstream in(dir_ / name);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
  }
  std::string path(const std::string& name) { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, GenerateWritesInstanceJson) {
  ASSERT_EQ(cli("generate --problem maxcut --n 6 --seed 4 --out " + path("i.json")), 0);
  const auto doc = nlohmann::json::parse(read("i.json"));
  EXPECT_EQ(doc.at("instance").at("n_qubits"), 6);
  EXPECT_EQ(doc.at("qubo").at("b").size(), 6u);
}

TEST_F(CliTest, GenerateRejectsInvalidMax3SatSize) {
  EXPECT_NE(cli("generate --problem max3sat --n 8"), 0);
  EXPECT_NE(read("stderr.txt").find("multiple of three"), std::string::npos);
}

TEST_F(CliTest, RunWritesTrace) {
  ASSERT_EQ(cli("generate --problem portfolio --n 4 --seed 1 --out " + path("i.json")), 0);
  ASSERT_EQ(cli("run --instance " + path("i.json") +
                " --algo qaoa -p 1 --alpha 0.25 --mode sampled --shots 128 --seed 3 --out " +
                path("t.csv")),
            0);
  const auto rows = read_sweep_csv(fs::path(path("t.csv")));
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows[0].algo, "qaoa");
  EXPECT_EQ(rows[0].problem, "portfolio");
  EXPECT_NE(cli("run --problem maxcut --n 4 --alpha 1.5"), 0);
  EXPECT_NE(cli("run --problem maxcut --n 4 --mode noisy"), 0);
}

TEST_F(CliTest, SweepAndReport) {
  std::ofstream(path("cfg.json")) << nlohmann::json(small_config()).dump();
  ASSERT_EQ(cli("sweep --config " + path("cfg.json") + " --out " + path("a.csv")), 0);
  ASSERT_EQ(cli("sweep --config " + path("cfg.json") + " --out " + path("b.csv") + " --threads 2"), 0);
  EXPECT_EQ(read("a.csv"), read("b.csv"));
  ASSERT_EQ(cli("report --in " + path("a.csv") + " --out-dir " + path("rep")), 0);
  EXPECT_NE(read("rep/summary.csv").find("algo,p,alpha,threshold"), std::string::npos);
  EXPECT_NE(read("rep/fraction_curves.csv").find("vqe,1,0.25,0.01"), std::string::npos);
  EXPECT_FALSE(read("rep/mean_overlap.csv").empty());
}

TEST_F(CliTest, SweepValidationFailsFast) {
  std::ofstream(path("empty.json")) << R"({"problems": []})";
  EXPECT_NE(cli("sweep --config " + path("empty.json") + " --out " + path("x.csv")), 0);
  EXPECT_FALSE(fs::exists(path("x.csv")));
  EXPECT_NE(cli("sweep --config " + path("missing.json")), 0);
}

TEST_F(CliTest, SweepWritesFailureSidecar) {
  ExperimentConfig c = small_config();
  c.problems = {ProblemClass::Max3Sat, ProblemClass::MaxCut};
  std::ofstream(path("cfg.json")) << nlohmann::json(c).dump();
  ASSERT_EQ(cli("sweep --config " + path("cfg.json") + " --out " + path("s.csv")), 0);
  EXPECT_NE(read("s.csv.failures.csv").find("max3sat"), std::string::npos);
}

TEST_F(CliTest, FlatnessReport) {
  ASSERT_EQ(cli("flatness --needle 6 --marked 5 --p 2 --angle-seed 1 --out " + path("f.json")), 0);
  const auto doc = nlohmann::json::parse(read("f.json"));
  EXPECT_TRUE(doc.at("bound_holds").get<bool>());
  EXPECT_EQ(doc.at("Delta_per_layer").size(), 3u);
  ASSERT_EQ(cli("flatness --problem maxcut --n 6 --p 1 --out " + path("g.json")), 0);
}

TEST_F(CliTest, OracleCheckAndRegen) {
  const std::string golden = path("golden.json");
  std::ofstream(golden) << serialize_golden_suite(load_golden_suite());
  EXPECT_EQ(cli("oracle --check --golden " + golden), 0);
  GoldenSuite stale = load_golden_suite();
  stale.find("portfolio_zero_assignment").expected["value"] = 0.0;
  std::ofstream(golden, std::ios::trunc) << serialize_golden_suite(stale);
  EXPECT_NE(cli("oracle --check --golden " + golden), 0);
  EXPECT_EQ(cli("oracle --regen --golden " + golden), 0);
  EXPECT_EQ(cli("oracle --check --golden " + golden), 0);
  EXPECT_NE(cli("oracle --golden " + golden), 0);
}

}  // namespace
}  // namespace cvarqo
