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

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "cvarqo/random.hpp"

namespace cvarqo {
namespace {

constexpr double kSupportThreshold = 1e-12;

Evaluation evaluate_exact(const StateVector& state, const DiagonalHamiltonian& h, double alpha) {
  Evaluation e(cvar_exact(outcome_distribution(state, h), alpha));
  const auto amps = state.amplitudes();
  for (BasisIndex j = 0; j < amps.size(); ++j) {
    if (std::norm(amps[j]) > kSupportThreshold &&
        (!e.best_bitstring || h[j] < e.best_bitstring_value)) {
      e.best_bitstring = j;
      e.best_bitstring_value = h[j];
    }
  }
  return e;
}

Evaluation evaluate_sampled(const StateVector& state, const DiagonalHamiltonian& h, double alpha,
                            std::size_t shots, OutcomeSampler& sampler) {
  const auto draws = sampler.sample(state, shots);
  std::vector<double> values(draws.size());
  BasisIndex best = draws.front();
  for (std::size_t s = 0; s < draws.size(); ++s) {
    values[s] = h[draws[s]];
    if (values[s] < h[best]) best = draws[s];
  }
  Evaluation e(cvar_of_samples(std::move(values), alpha));
  e.best_bitstring = best;
  e.best_bitstring_value = h[best];
  return e;
}

std::uint64_t alpha_key(double alpha) { return std::bit_cast<std::uint64_t>(alpha); }

ParameterVector random_point(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  ParameterVector theta(dim);
  for (auto& t : theta) t = uniform_real(rng, -std::numbers::pi, std::numbers::pi);
  return theta;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <typename T>
T parse_number(const std::string& text, std::size_t line_number) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::runtime_error("sweep CSV line " + std::to_string(line_number) +
                             ": cannot parse '" + text + "'");
  }
  return value;
}

using GroupKey = std::tuple<std::string, int, double>;
using RunKey = std::tuple<std::string, int, std::uint64_t>;

// Rows grouped by (algo, p, alpha), then by run, each run ordered by eval.
std::map<GroupKey, std::map<RunKey, std::vector<SweepRow>>> group_runs(
    const std::vector<SweepRow>& rows) {
  std::map<GroupKey, std::map<RunKey, std::vector<SweepRow>>> groups;
  for (const auto& r : rows) {
    groups[{r.algo, r.p, r.alpha}][{r.problem, r.n, r.seed}].push_back(r);
  }
  for (auto& [key, runs] : groups) {
    for (auto& [run, trace] : runs) {
      std::stable_sort(trace.begin(), trace.end(),
                       [](const SweepRow& a, const SweepRow& b) { return a.eval < b.eval; });
    }
  }
  return groups;
}

}  // namespace

AnsatzFamily algorithm_from_string(const std::string& name) {
  if (name == "vqe") return AnsatzFamily::Vqe;
  if (name == "qaoa") return AnsatzFamily::Qaoa;
  throw std::invalid_argument("unknown algorithm '" + name + "' (expected vqe or qaoa)");
}

RunTrace optimize_cvar(const StatePreparation& prepare, const DiagonalHamiltonian& h,
                       const CvarConfig& cvar, const OptimizerConfig& optimizer) {
  cvar.validate();
  std::optional<OutcomeSampler> sampler;
  if (cvar.sampled) sampler.emplace(cvar.sampled->seed);
  const auto objective = [&](std::span<const double> theta) {
    const StateVector state = prepare(theta);
    if (state.num_qubits() != h.num_qubits()) {
      throw std::invalid_argument("trial state and Hamiltonian qubit counts differ");
    }
    Evaluation e = sampler ? evaluate_sampled(state, h, cvar.alpha, cvar.sampled->shots, *sampler)
                           : evaluate_exact(state, h, cvar.alpha);
    e.overlap = overlap_with_optimum(state, h);
    return e;
  };
  return minimize(objective, optimizer);
}

RunTrace run_single(const QuboProblem& qubo, const RunOptions& options) {
  qubo.validate();
  const IsingModel ising = qubo_to_ising(qubo);
  const DiagonalHamiltonian h = ising_to_hamiltonian(ising);
  const int n = qubo.num_variables();
  const AnsatzSpec spec = options.algorithm == AnsatzFamily::Vqe
                              ? AnsatzSpec::vqe(n, options.depth, options.entanglement)
                              : AnsatzSpec::qaoa(ising, options.depth);
  spec.validate();

  OptimizerConfig opt;
  opt.max_evaluations = options.max_evaluations;
  opt.initial_point = options.initial_point.empty()
                          ? ParameterVector(spec.parameter_count(), 0.0)
                          : options.initial_point;
  if (opt.initial_point.size() != spec.parameter_count()) {
    throw std::invalid_argument("initial point has " + std::to_string(opt.initial_point.size()) +
                                " entries, the ansatz takes " +
                                std::to_string(spec.parameter_count()));
  }
  opt.initial_step = options.initial_step;
  opt.final_step = options.final_step;
  return optimize_cvar([&spec](std::span<const double> theta) { return trial_state(spec, theta); },
                       h, options.cvar, opt);
}

void ExperimentConfig::validate() const {
  if (problems.empty()) throw std::invalid_argument("experiment config: empty problem list");
  if (sizes.empty()) throw std::invalid_argument("experiment config: empty size list");
  for (int n : sizes) {
    if (n < 1 || n > kMaxQubits) {
      throw std::invalid_argument("experiment config: size " + std::to_string(n) +
                                  " out of range");
    }
  }
  if (instances_per_size < 1) {
    throw std::invalid_argument("experiment config: instances_per_size must be >= 1");
  }
  if (alphas.empty()) throw std::invalid_argument("experiment config: empty alpha list");
  for (double a : alphas) validate_alpha(a);
  if (vqe_depths.empty() && qaoa_depths.empty()) {
    throw std::invalid_argument("experiment config: no depths to run");
  }
  for (int p : vqe_depths) {
    if (p < 0) throw std::invalid_argument("experiment config: VQE depth must be >= 0");
  }
  for (int p : qaoa_depths) {
    if (p < 1) throw std::invalid_argument("experiment config: QAOA depth must be >= 1");
  }
  if (shots && *shots < 1) throw std::invalid_argument("experiment config: shots must be >= 1");
  if (iteration_budget_per_qubit < 1) {
    throw std::invalid_argument("experiment config: iteration budget must be >= 1");
  }
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  std::vector<std::string> problems;
  for (auto p : c.problems) problems.push_back(to_string(p));
  j = nlohmann::json{{"problems", problems},
                     {"sizes", c.sizes},
                     {"instances_per_size", c.instances_per_size},
                     {"alphas", c.alphas},
                     {"vqe_depths", c.vqe_depths},
                     {"qaoa_depths", c.qaoa_depths},
                     {"entanglement", to_string(c.entanglement)},
                     {"mode", c.shots ? "sampled" : "exact"},
                     {"master_seed", c.master_seed},
                     {"iteration_budget_per_qubit", c.iteration_budget_per_qubit},
                     {"initial_point", c.initial_point == InitialPoint::Zero ? "zero" : "random"},
                     {"full_grid", c.full_grid},
                     {"threads", c.threads}};
  if (c.shots) j["shots"] = *c.shots;
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  c = ExperimentConfig{};
  c.problems.clear();
  for (const auto& name : j.at("problems")) {
    c.problems.push_back(problem_from_string(name.get<std::string>()));
  }
  c.sizes = j.value("sizes", c.sizes);
  c.instances_per_size = j.value("instances_per_size", c.instances_per_size);
  c.alphas = j.value("alphas", c.alphas);
  c.vqe_depths = j.value("vqe_depths", c.vqe_depths);
  c.qaoa_depths = j.value("qaoa_depths", c.qaoa_depths);
  if (j.contains("entanglement")) {
    c.entanglement = entanglement_from_string(j.at("entanglement").get<std::string>());
  }
  const std::string mode = j.value("mode", std::string("exact"));
  if (mode == "sampled") {
    c.shots = j.value("shots", std::size_t{8192});
  } else if (mode != "exact") {
    throw std::invalid_argument("experiment config: mode must be exact or sampled");
  }
  c.master_seed = j.value("master_seed", c.master_seed);
  c.iteration_budget_per_qubit = j.value("iteration_budget_per_qubit", c.iteration_budget_per_qubit);
  const std::string init = j.value("initial_point", std::string("random"));
  if (init == "zero") {
    c.initial_point = InitialPoint::Zero;
  } else if (init == "random") {
    c.initial_point = InitialPoint::Random;
  } else {
    throw std::invalid_argument("experiment config: initial_point must be zero or random");
  }
  c.full_grid = j.value("full_grid", c.full_grid);
  c.threads = j.value("threads", c.threads);
}

std::uint64_t instance_seed(std::uint64_t master_seed, ProblemClass problem, int n, int index) {
  return derive_seed(master_seed, hash_string(to_string(problem)), static_cast<std::uint64_t>(n),
                     static_cast<std::uint64_t>(index));
}

std::vector<SweepTask> plan_sweep(const ExperimentConfig& config) {
  std::vector<SweepTask> tasks;
  for (auto problem : config.problems) {
    for (int n : config.sizes) {
      for (int i = 0; i < config.instances_per_size; ++i) {
        const std::uint64_t seed = instance_seed(config.master_seed, problem, n, i);
        auto add = [&](AnsatzFamily algorithm, int depth) {
          for (double alpha : config.alphas) {
            tasks.push_back({problem, n, i, seed, algorithm, depth, alpha});
          }
        };
        for (int p : config.vqe_depths) add(AnsatzFamily::Vqe, p);
        for (int p : config.qaoa_depths) {
          if (p >= 3 && n > 10 && !config.full_grid) continue;
          add(AnsatzFamily::Qaoa, p);
        }
      }
    }
  }
  return tasks;
}

SweepResult run_sweep(const ExperimentConfig& config) {
  config.validate();
  const auto tasks = plan_sweep(config);

  // Instances are shared by every task on them; build each one once.
  struct Prepared {
    std::optional<QuboProblem> qubo;
    std::string error;
  };
  std::map<std::tuple<ProblemClass, int, int>, Prepared> instances;
  for (const auto& t : tasks) {
    auto [it, inserted] = instances.try_emplace({t.problem, t.n, t.instance_index});
    if (!inserted) continue;
    try {
      InstanceSpec spec;
      spec.problem = t.problem;
      spec.num_qubits = t.n;
      spec.seed = t.instance_seed;
      it->second.qubo = generate(spec).qubo;
    } catch (const std::exception& e) {
      it->second.error = e.what();
    }
  }

  std::vector<std::vector<SweepRow>> rows(tasks.size());
  std::vector<std::optional<std::string>> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const auto& t = tasks[k];
      try {
        const auto& prepared = instances.at({t.problem, t.n, t.instance_index});
        if (!prepared.qubo) throw std::invalid_argument(prepared.error);
        RunOptions options;
        options.algorithm = t.algorithm;
        options.depth = t.depth;
        options.entanglement = config.entanglement;
        options.cvar.alpha = t.alpha;
        const std::uint64_t run_seed =
            derive_seed(t.instance_seed, hash_string(to_string(t.algorithm)),
                        static_cast<std::uint64_t>(t.depth));
        if (config.shots) {
          options.cvar.sampled = SampledMode{*config.shots, derive_seed(run_seed, alpha_key(t.alpha))};
        }
        options.max_evaluations = config.iteration_budget_per_qubit * t.n;
        if (config.initial_point == InitialPoint::Random) {
          const std::size_t dim = t.algorithm == AnsatzFamily::Vqe
                                      ? static_cast<std::size_t>(t.n) * (t.depth + 1)
                                      : 2 * static_cast<std::size_t>(t.depth);
          options.initial_point = random_point(dim, run_seed);
        }
        const RunTrace trace = run_single(*prepared.qubo, options);
        rows[k] = trace_rows(trace, to_string(t.problem), t.n, t.instance_seed, t.algorithm,
                             t.depth, t.alpha);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };

  unsigned threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }

  SweepResult result;
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const auto& t = tasks[k];
    if (errors[k]) {
      result.failures.push_back({to_string(t.problem), t.n, t.instance_seed,
                                 to_string(t.algorithm), t.depth, t.alpha, *errors[k]});
    } else {
      result.rows.insert(result.rows.end(), rows[k].begin(), rows[k].end());
    }
  }
  return result;
}

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) throw std::runtime_error("cannot format double");
  return std::string(buffer, ptr);
}

std::vector<SweepRow> trace_rows(const RunTrace& trace, const std::string& problem, int n,
                                 std::uint64_t seed, AnsatzFamily algorithm, int p, double alpha) {
  std::vector<SweepRow> rows;
  rows.reserve(trace.records.size());
  for (const auto& r : trace.records) {
    rows.push_back({problem, n, seed, to_string(algorithm), p, alpha, r.index,
                    static_cast<double>(r.index) / n, r.value, r.overlap});
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.problem << ',' << r.n << ',' << r.seed << ',' << r.algo << ',' << r.p << ','
        << format_double(r.alpha) << ',' << r.eval << ',' << format_double(r.norm_iter) << ','
        << format_double(r.objective) << ',' << format_double(r.overlap) << '\n';
  }
}

void write_failures_csv(std::ostream& out, const std::vector<SweepFailure>& failures) {
  out << "problem,n,seed,algo,p,alpha,message\n";
  for (const auto& f : failures) {
    std::string message = f.message;
    std::replace(message.begin(), message.end(), ',', ';');
    std::replace(message.begin(), message.end(), '\n', ' ');
    out << f.problem << ',' << f.n << ',' << f.seed << ',' << f.algo << ',' << f.p << ','
        << format_double(f.alpha) << ',' << message << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw std::runtime_error("sweep CSV must start with the header '" +
                             std::string(kSweepCsvHeader) + "'");
  }
  std::vector<SweepRow> rows;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 10) {
      throw std::runtime_error("sweep CSV line " + std::to_string(line_number) + ": expected 10 fields");
    }
    SweepRow r;
    r.problem = f[0];
    r.n = parse_number<int>(f[1], line_number);
    r.seed = parse_number<std::uint64_t>(f[2], line_number);
    r.algo = f[3];
    r.p = parse_number<int>(f[4], line_number);
    r.alpha = parse_number<double>(f[5], line_number);
    r.eval = parse_number<std::size_t>(f[6], line_number);
    r.norm_iter = parse_number<double>(f[7], line_number);
    r.objective = parse_number<double>(f[8], line_number);
    r.overlap = parse_number<double>(f[9], line_number);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_sweep_csv(in);
}

double time_to_threshold(const std::vector<SweepRow>& rows, double threshold) {
  for (const auto& r : rows) {
    if (r.overlap >= threshold) return r.norm_iter;
  }
  return kNeverReached;
}

double median_time(std::vector<double> times) {
  if (times.empty()) return kNeverReached;
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  if (times.size() % 2 == 1) return times[mid];
  return 0.5 * (times[mid - 1] + times[mid]);
}

double FractionCurve::final_fraction() const {
  return points.empty() ? 0.0 : points.back().fraction;
}

double FractionCurve::fraction_at(double norm_iter) const {
  double value = 0.0;
  for (const auto& pt : points) {
    if (pt.norm_iter > norm_iter) break;
    value = pt.fraction;
  }
  return value;
}

std::vector<FractionCurve> aggregate_fraction_curves(const std::vector<SweepRow>& rows,
                                                     double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("threshold must lie in (0, 1)");
  }
  std::vector<FractionCurve> curves;
  for (const auto& [key, runs] : group_runs(rows)) {
    FractionCurve curve;
    std::tie(curve.algo, curve.p, curve.alpha) = key;
    curve.threshold = threshold;
    curve.instances = runs.size();
    std::vector<double> times;
    double horizon = 0.0;
    for (const auto& [run, trace] : runs) {
      times.push_back(time_to_threshold(trace, threshold));
      horizon = std::max(horizon, trace.back().norm_iter);
    }
    curve.median_time = median_time(times);
    std::sort(times.begin(), times.end());
    const double total = static_cast<double>(times.size());
    curve.points.push_back({0.0, 0.0});
    for (std::size_t i = 0; i < times.size() && std::isfinite(times[i]); ++i) {
      const bool last_of_tie = i + 1 == times.size() || times[i + 1] != times[i];
      if (!last_of_tie) continue;
      curve.reached = i + 1;
      curve.points.push_back({times[i], static_cast<double>(i + 1) / total});
    }
    if (curve.points.back().norm_iter < horizon) {
      curve.points.push_back({horizon, curve.points.back().fraction});
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::vector<MeanOverlapCurve> mean_overlap_curves(const std::vector<SweepRow>& rows) {
  std::vector<MeanOverlapCurve> curves;
  for (const auto& [key, runs] : group_runs(rows)) {
    MeanOverlapCurve curve;
    std::tie(curve.algo, curve.p, curve.alpha) = key;
    double horizon = 0.0;
    for (const auto& [run, trace] : runs) horizon = std::max(horizon, trace.back().norm_iter);
    const int steps = static_cast<int>(std::ceil(horizon));
    for (int k = 1; k <= steps; ++k) {
      double sum = 0.0;
      for (const auto& [run, trace] : runs) {
        double value = trace.front().overlap;
        for (const auto& r : trace) {
          if (r.norm_iter > k) break;
          value = r.overlap;
        }
        sum += value;
      }
      curve.points.push_back({static_cast<double>(k), sum / static_cast<double>(runs.size())});
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

}  // namespace cvarqo
