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

#pragma once

// Experiment orchestration: single CVaR runs, seeded sweeps over problem
// classes, sizes, depths and alpha, CSV emission and fraction-of-instances
// aggregation.
//
// Seeds are split with derive_seed. An instance seed is derived from
// (master_seed, problem, n, instance index). The initial point of a run is
// derived from (instance seed, algorithm, p), so runs that differ only in
// alpha start from the same point; the shot sampler additionally mixes in
// alpha. Results never depend on thread scheduling.
//
// Normalized iteration is the 1-based function-evaluation count divided by
// the qubit count.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cvarqo/ansatz.hpp"
#include "cvarqo/hamiltonian.hpp"
#include "cvarqo/objective.hpp"
#include "cvarqo/optimizer.hpp"
#include "cvarqo/oracle.hpp"
#include "cvarqo/problems.hpp"

namespace cvarqo {

AnsatzFamily algorithm_from_string(const std::string& name);

/// Exact- or sampled-CVaR minimization of `h` over the states `prepare`
/// produces. Each evaluation records the overlap of the exact state with the
/// ground space and the best bitstring seen: in exact mode the lowest-energy
/// basis state with probability above 1e-12, in sampled mode the lowest
/// drawn sample. One sampler stream serves the whole run.
RunTrace optimize_cvar(const StatePreparation& prepare, const DiagonalHamiltonian& h,
                       const CvarConfig& cvar, const OptimizerConfig& optimizer);

struct RunOptions {
  AnsatzFamily algorithm = AnsatzFamily::Vqe;
  int depth = 1;
  Entanglement entanglement = Entanglement::AllToAll;
  CvarConfig cvar;
  int max_evaluations = 500;
  /// Empty means theta = 0.
  ParameterVector initial_point;
  double initial_step = 0.5;
  double final_step = 1e-4;
};

/// Builds the Ising model, Hamiltonian and ansatz for `qubo` and runs
/// optimize_cvar.
RunTrace run_single(const QuboProblem& qubo, const RunOptions& options);

enum class InitialPoint { Zero, Random };

struct ExperimentConfig {
  std::vector<ProblemClass> problems;
  std::vector<int> sizes{6, 8, 10};
  int instances_per_size = 10;
  std::vector<double> alphas{0.01, 0.05, 0.10, 0.25, 0.50, 0.75, 1.00};
  std::vector<int> vqe_depths{0, 1, 2};
  std::vector<int> qaoa_depths{1, 2, 3};
  Entanglement entanglement = Entanglement::AllToAll;
  /// nullopt: exact mode.
  std::optional<std::size_t> shots;
  std::uint64_t master_seed = 0;
  int iteration_budget_per_qubit = 50;
  InitialPoint initial_point = InitialPoint::Random;
  /// Without it, QAOA at depth 3 is skipped above 10 qubits.
  bool full_grid = false;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;

  /// Throws std::invalid_argument.
  void validate() const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& config);
/// Missing keys keep their defaults; "problems" is required.
void from_json(const nlohmann::json& j, ExperimentConfig& config);

struct SweepRow {
  std::string problem;
  int n = 0;
  std::uint64_t seed = 0;
  std::string algo;
  int p = 0;
  double alpha = 1.0;
  std::size_t eval = 0;
  double norm_iter = 0.0;
  double objective = 0.0;
  double overlap = 0.0;
};

struct SweepFailure {
  std::string problem;
  int n = 0;
  std::uint64_t seed = 0;
  std::string algo;
  int p = 0;
  double alpha = 1.0;
  std::string message;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepFailure> failures;
};

/// One run of a sweep; `instance_index` counts within (problem, n).
struct SweepTask {
  ProblemClass problem = ProblemClass::MaxCut;
  int n = 0;
  int instance_index = 0;
  std::uint64_t instance_seed = 0;
  AnsatzFamily algorithm = AnsatzFamily::Vqe;
  int depth = 0;
  double alpha = 1.0;
};

/// Tasks in the deterministic order rows are emitted.
std::vector<SweepTask> plan_sweep(const ExperimentConfig& config);
std::uint64_t instance_seed(std::uint64_t master_seed, ProblemClass problem, int n, int index);

/// Validates, then runs every task. A task that throws is recorded as a
/// failure and the sweep continues.
SweepResult run_sweep(const ExperimentConfig& config);

inline constexpr const char* kSweepCsvHeader =
    "problem,n,seed,algo,p,alpha,eval,norm_iter,objective,overlap";

/// Shortest decimal that reads back to the same double.
std::string format_double(double value);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_failures_csv(std::ostream& out, const std::vector<SweepFailure>& failures);
/// Throws std::runtime_error on a wrong header or malformed line.
std::vector<SweepRow> read_sweep_csv(std::istream& in);
std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path);

/// Trace rows for one run.
std::vector<SweepRow> trace_rows(const RunTrace& trace, const std::string& problem, int n,
                                 std::uint64_t seed, AnsatzFamily algorithm, int p, double alpha);

inline constexpr double kNeverReached = std::numeric_limits<double>::infinity();

/// First normalized iteration at which overlap >= threshold, or
/// kNeverReached. `rows` belong to one run, ordered by eval.
double time_to_threshold(const std::vector<SweepRow>& rows, double threshold);

struct CurvePoint {
  double norm_iter = 0.0;
  double fraction = 0.0;
};

struct FractionCurve {
  std::string algo;
  int p = 0;
  double alpha = 1.0;
  double threshold = 0.0;
  std::size_t instances = 0;
  std::size_t reached = 0;
  /// Step curve starting at (0, 0); the last point sits at the largest
  /// normalized iteration of the group.
  std::vector<CurvePoint> points;
  /// Median time to threshold; runs that never reach it count as +inf.
  double median_time = kNeverReached;

  double final_fraction() const;
  /// Fraction of instances that reached the threshold by norm_iter.
  double fraction_at(double norm_iter) const;
};

/// One curve per (algo, p, alpha), each counting the distinct
/// (problem, n, seed) runs of the group. Throws unless 0 < threshold < 1.
std::vector<FractionCurve> aggregate_fraction_curves(const std::vector<SweepRow>& rows,
                                                     double threshold);

/// Median with +inf entries ordered last; the mean of the two middle
/// entries for an even count.
double median_time(std::vector<double> times);

/// Mean overlap across the runs of each (algo, p, alpha) group at integer
/// normalized iterations; a run that stopped early contributes its last
/// reported value.
struct MeanOverlapCurve {
  std::string algo;
  int p = 0;
  double alpha = 1.0;
  std::vector<CurvePoint> points;  // fraction holds the mean overlap
};
std::vector<MeanOverlapCurve> mean_overlap_curves(const std::vector<SweepRow>& rows);

}  // namespace cvarqo
