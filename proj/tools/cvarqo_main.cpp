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

// Command-line front end: instance generation, single runs, sweeps,
// reports, flatness diagnostics and golden-data regeneration.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cvarqo/fixtures.hpp"
#include "cvarqo/flatness.hpp"
#include "cvarqo/harness.hpp"
#include "cvarqo/oracle.hpp"
#include "cvarqo/problems.hpp"
#include "cvarqo/random.hpp"
#include "cvarqo/regen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Raised for bad user input; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::optional<std::size_t> shots_for(const std::string& mode, std::size_t shots) {
  if (mode == "exact") return std::nullopt;
  if (mode == "sampled") return shots;
  throw UsageError("--mode must be exact or sampled");
}

struct InstanceArgs {
  std::string file;
  std::string problem = "maxcut";
  int n = 6;
  std::uint64_t seed = 0;
  bool portfolio_fixture = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--instance", file, "instance JSON written by `generate`");
    cmd->add_option("--problem", problem, "problem class")
        ->check(CLI::IsMember({"stable_set", "max3sat", "partition", "maxcut", "market_split",
                               "portfolio"}));
    cmd->add_option("--n", n, "qubit count");
    cmd->add_option("--instance-seed", seed, "instance generator seed");
    cmd->add_flag("--portfolio-fixture", portfolio_fixture, "use the six-asset portfolio instance");
  }

  // (label, seed, QUBO)
  std::tuple<std::string, std::uint64_t, cvarqo::QuboProblem> load() const {
    if (portfolio_fixture) {
      return {"portfolio_fixture", 0, cvarqo::portfolio_qubo(cvarqo::portfolio_fixture())};
    }
    if (!file.empty()) {
      const json doc = read_json(file);
      const auto spec = doc.at("instance").get<cvarqo::InstanceSpec>();
      return {cvarqo::to_string(spec.problem), spec.seed, doc.at("qubo").get<cvarqo::QuboProblem>()};
    }
    cvarqo::InstanceSpec spec;
    spec.problem = cvarqo::problem_from_string(problem);
    spec.num_qubits = n;
    spec.seed = seed;
    try {
      return {problem, seed, cvarqo::generate(spec).qubo};
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
};

int cmd_generate(const std::string& problem, int n, std::uint64_t seed, double density,
                 const std::string& out) {
  cvarqo::InstanceSpec spec;
  spec.problem = cvarqo::problem_from_string(problem);
  spec.num_qubits = n;
  spec.seed = seed;
  spec.edge_density = density;
  cvarqo::GeneratedInstance instance;
  try {
    instance = cvarqo::generate(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const json doc{{"instance", instance.spec},
                 {"qubo", instance.qubo},
                 {"ising", cvarqo::qubo_to_ising(instance.qubo)},
                 {"details", instance.details}};
  write_text(out, doc.dump(2) + "\n");
  return 0;
}

struct RunArgs {
  InstanceArgs instance;
  std::string algo = "vqe";
  int depth = 1;
  double alpha = 1.0;
  std::string entanglement = "all-to-all";
  std::string mode = "exact";
  std::size_t shots = 8192;
  std::uint64_t seed = 0;
  int evals_per_qubit = 50;
  std::string init = "zero";
  std::string out;
};

int cmd_run(const RunArgs& a) {
  const auto [label, instance_seed, qubo] = a.instance.load();
  const int n = qubo.num_variables();
  cvarqo::RunOptions options;
  options.algorithm = cvarqo::algorithm_from_string(a.algo);
  options.depth = a.depth;
  options.entanglement = cvarqo::entanglement_from_string(a.entanglement);
  options.cvar.alpha = a.alpha;
  if (const auto shots = shots_for(a.mode, a.shots)) {
    options.cvar.sampled = cvarqo::SampledMode{*shots, a.seed};
  }
  options.max_evaluations = a.evals_per_qubit * n;
  if (a.init == "random") {
    const std::size_t dim = options.algorithm == cvarqo::AnsatzFamily::Vqe
                                ? static_cast<std::size_t>(n) * (a.depth + 1)
                                : 2 * static_cast<std::size_t>(a.depth);
    cvarqo::Rng rng(cvarqo::derive_seed(a.seed, cvarqo::hash_string("initial_point")));
    for (std::size_t i = 0; i < dim; ++i) {
      options.initial_point.push_back(cvarqo::uniform_real(rng, -std::numbers::pi, std::numbers::pi));
    }
  } else if (a.init != "zero") {
    throw UsageError("--init must be zero or random");
  }
  cvarqo::RunTrace trace;
  try {
    trace = cvarqo::run_single(qubo, options);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ostringstream csv;
  cvarqo::write_sweep_csv(csv, cvarqo::trace_rows(trace, label, n, instance_seed,
                                                  options.algorithm, a.depth, a.alpha));
  write_text(a.out, csv.str());
  const auto [best, value] = cvarqo::best_observed_solution(trace);
  std::fprintf(stderr, "evaluations=%zu best_cvar=%.12g best_bitstring=%s value=%.12g\n",
               trace.records.size(), trace.best_value, cvarqo::bitstring(best, n).c_str(), value);
  return 0;
}

struct SweepArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string mode;
  std::optional<std::size_t> shots;
  std::optional<unsigned> threads;
};

int cmd_sweep(const SweepArgs& a) {
  cvarqo::ExperimentConfig config;
  try {
    config = read_json(a.config).get<cvarqo::ExperimentConfig>();
    if (a.seed) config.master_seed = *a.seed;
    if (!a.mode.empty()) config.shots = shots_for(a.mode, a.shots.value_or(8192));
    if (a.shots && config.shots) config.shots = *a.shots;
    if (a.threads) config.threads = *a.threads;
    config.validate();
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto result = cvarqo::run_sweep(config);
  std::ostringstream csv;
  cvarqo::write_sweep_csv(csv, result.rows);
  write_text(a.out, csv.str());
  if (!result.failures.empty()) {
    std::ostringstream failures;
    cvarqo::write_failures_csv(failures, result.failures);
    const std::string path = (a.out.empty() || a.out == "-") ? "sweep.failures.csv"
                                                             : a.out + ".failures.csv";
    write_text(path, failures.str());
    std::fprintf(stderr, "%zu runs failed; see %s\n", result.failures.size(), path.c_str());
  }
  return 0;
}

int cmd_report(const std::string& in, const std::string& out_dir,
               const std::vector<double>& thresholds) {
  const auto rows = cvarqo::read_sweep_csv(fs::path(in));
  fs::create_directories(out_dir);
  std::ostringstream summary, curves, mean;
  summary << "algo,p,alpha,threshold,instances,reached,final_fraction,median_norm_iter\n";
  curves << "algo,p,alpha,threshold,norm_iter,fraction\n";
  for (double threshold : thresholds) {
    for (const auto& c : cvarqo::aggregate_fraction_curves(rows, threshold)) {
      const std::string key = c.algo + "," + std::to_string(c.p) + "," +
                              cvarqo::format_double(c.alpha) + "," +
                              cvarqo::format_double(threshold);
      summary << key << ',' << c.instances << ',' << c.reached << ','
              << cvarqo::format_double(c.final_fraction()) << ','
              << cvarqo::format_double(c.median_time) << '\n';
      for (const auto& pt : c.points) {
        curves << key << ',' << cvarqo::format_double(pt.norm_iter) << ','
               << cvarqo::format_double(pt.fraction) << '\n';
      }
    }
  }
  mean << "algo,p,alpha,norm_iter,mean_overlap\n";
  for (const auto& c : cvarqo::mean_overlap_curves(rows)) {
    for (const auto& pt : c.points) {
      mean << c.algo << ',' << c.p << ',' << cvarqo::format_double(c.alpha) << ','
           << cvarqo::format_double(pt.norm_iter) << ',' << cvarqo::format_double(pt.fraction)
           << '\n';
    }
  }
  write_text((fs::path(out_dir) / "summary.csv").string(), summary.str());
  write_text((fs::path(out_dir) / "fraction_curves.csv").string(), curves.str());
  write_text((fs::path(out_dir) / "mean_overlap.csv").string(), mean.str());
  return 0;
}

struct FlatnessArgs {
  InstanceArgs instance;
  std::optional<int> needle_n;
  cvarqo::BasisIndex marked = 0;
  int p = 1;
  std::uint64_t angle_seed = 0;
  std::vector<double> theta;
  double tolerance = cvarqo::kAmplitudeTolerance;
  std::string out;
};

int cmd_flatness(const FlatnessArgs& a) {
  const int p = a.p;
  if (p < 0) throw UsageError("--p must be >= 0");
  std::vector<double> theta = a.theta;
  if (theta.empty()) {
    cvarqo::Rng rng(a.angle_seed);
    for (int i = 0; i < 2 * p; ++i) {
      theta.push_back(cvarqo::uniform_real(rng, -std::numbers::pi, std::numbers::pi));
    }
  } else if (theta.size() != 2 * static_cast<std::size_t>(p)) {
    throw UsageError("--theta needs 2p values (betas then gammas)");
  }
  cvarqo::FlatnessReport report;
  json source;
  try {
    if (a.needle_n) {
      report = cvarqo::analyze_diagonal_qaoa(cvarqo::needle_hamiltonian(*a.needle_n, a.marked),
                                             theta, a.tolerance);
      source = {{"hamiltonian", "needle"}, {"n", *a.needle_n}, {"marked", a.marked}};
    } else {
      const auto [label, seed, qubo] = a.instance.load();
      const auto ising = cvarqo::qubo_to_ising(qubo);
      report = cvarqo::analyze_qaoa(cvarqo::AnsatzSpec::qaoa(ising, p),
                                    cvarqo::ising_to_hamiltonian(ising), theta, a.tolerance);
      source = {{"hamiltonian", label}, {"n", qubo.num_variables()}, {"instance_seed", seed}};
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json doc = report;
  doc["source"] = source;
  doc["theta"] = theta;
  write_text(a.out, doc.dump(2) + "\n");
  return report.bound_holds ? 0 : 1;
}

int cmd_oracle(bool regen, bool check, const std::string& golden, const std::string& out) {
  if (regen == check) throw UsageError("oracle needs exactly one of --regen or --check");
  const auto frozen = cvarqo::load_golden_suite(fs::path(golden));
  const auto fresh = cvarqo::regenerate_golden_suite(frozen);
  const auto diffs = cvarqo::diff_golden_suites(frozen, fresh);
  if (regen) {
    write_text(out.empty() ? golden : out, cvarqo::serialize_golden_suite(fresh));
    std::fprintf(stderr, "regenerated %zu cases, %zu differences from the previous file\n",
                 fresh.cases.size(), diffs.size());
    return 0;
  }
  for (const auto& d : diffs) std::fprintf(stderr, "%s\n", d.c_str());
  if (!diffs.empty()) {
    std::fprintf(stderr, "golden suite is stale: %zu differences\n", diffs.size());
    return 1;
  }
  std::fprintf(stderr, "golden suite matches (%zu cases)\n", frozen.cases.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CVaR variational optimization on an exact state-vector simulator"};
  app.require_subcommand(1);
  int status = 0;

  std::string gen_problem = "maxcut", gen_out;
  int gen_n = 6;
  std::uint64_t gen_seed = 0;
  double gen_density = 0.5;
  auto* gen = app.add_subcommand("generate", "write a seeded random instance as JSON");
  gen->add_option("--problem", gen_problem, "problem class")->required();
  gen->add_option("--n", gen_n, "qubit count")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--density", gen_density, "edge density for graph problems");
  gen->add_option("--out,-o", gen_out, "output path (default stdout)");
  gen->callback([&] { status = cmd_generate(gen_problem, gen_n, gen_seed, gen_density, gen_out); });

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "run one CVaR optimization and write its trace CSV");
  run_args.instance.add_to(run);
  run->add_option("--algo", run_args.algo, "vqe or qaoa")->check(CLI::IsMember({"vqe", "qaoa"}));
  run->add_option("--depth,-p", run_args.depth, "ansatz depth");
  run->add_option("--alpha", run_args.alpha, "CVaR level in (0, 1]");
  run->add_option("--entanglement", run_args.entanglement, "all-to-all or ring (VQE)");
  run->add_option("--mode", run_args.mode, "exact or sampled");
  run->add_option("--shots", run_args.shots, "shots per evaluation in sampled mode");
  run->add_option("--seed", run_args.seed, "sampler and initial-point seed");
  run->add_option("--evals-per-qubit", run_args.evals_per_qubit, "evaluation budget per qubit");
  run->add_option("--init", run_args.init, "zero or random initial point");
  run->add_option("--out,-o", run_args.out, "trace CSV path (default stdout)");
  run->callback([&] { status = cmd_run(run_args); });

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "run a configured sweep and write the results CSV");
  sweep->add_option("--config,-c", sweep_args.config, "experiment config JSON")->required();
  sweep->add_option("--out,-o", sweep_args.out, "results CSV path (default stdout)");
  sweep->add_option("--seed", sweep_args.seed, "override master_seed");
  sweep->add_option("--mode", sweep_args.mode, "override mode: exact or sampled");
  sweep->add_option("--shots", sweep_args.shots, "override shots in sampled mode");
  sweep->add_option("--threads", sweep_args.threads, "worker threads (0 = all cores)");
  sweep->callback([&] { status = cmd_sweep(sweep_args); });

  std::string report_in, report_dir = "report";
  std::vector<double> report_thresholds{0.01, 0.10};
  auto* report = app.add_subcommand("report", "aggregate a results CSV into plot data");
  report->add_option("--in,-i", report_in, "results CSV from `sweep`")->required();
  report->add_option("--out-dir,-o", report_dir, "directory for the aggregate files");
  report->add_option("--thresholds", report_thresholds, "overlap thresholds in (0, 1)");
  report->callback([&] { status = cmd_report(report_in, report_dir, report_thresholds); });

  FlatnessArgs flat_args;
  auto* flat = app.add_subcommand("flatness", "amplitude-flatness diagnostics of a QAOA state");
  flat_args.instance.add_to(flat);
  flat->add_option("--needle", flat_args.needle_n, "use the needle Hamiltonian on this many qubits");
  flat->add_option("--marked", flat_args.marked, "marked basis index of the needle");
  flat->add_option("--p", flat_args.p, "QAOA depth");
  flat->add_option("--angle-seed", flat_args.angle_seed, "seed for random angles");
  flat->add_option("--theta", flat_args.theta, "explicit angles: betas then gammas");
  flat->add_option("--tol", flat_args.tolerance, "amplitude equality tolerance");
  flat->add_option("--out,-o", flat_args.out, "report JSON path (default stdout)");
  flat->callback([&] { status = cmd_flatness(flat_args); });

  bool oracle_regen = false, oracle_check = false;
  std::string oracle_golden = CVARQO_GOLDEN_SUITE_PATH, oracle_out;
  auto* oracle = app.add_subcommand("oracle", "recompute or verify the DERIVED golden values");
  oracle->add_flag("--regen", oracle_regen, "rewrite the golden file with recomputed values");
  oracle->add_flag("--check", oracle_check, "fail if recomputed values differ from the file");
  oracle->add_option("--golden", oracle_golden, "golden suite JSON");
  oracle->add_option("--out,-o", oracle_out, "where --regen writes (default: --golden)");
  oracle->callback(
      [&] { status = cmd_oracle(oracle_regen, oracle_check, oracle_golden, oracle_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return status;
}
