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

#include "cvarqo/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "cvarqo/random.hpp"

namespace cvarqo {
namespace {

constexpr std::array kAllProblems = {ProblemClass::StableSet, ProblemClass::Max3Sat,
                                     ProblemClass::Partition, ProblemClass::MaxCut,
                                     ProblemClass::MarketSplit, ProblemClass::Portfolio};

// Accumulates a quadratic pseudo-Boolean polynomial; x_i^2 folds into x_i.
class QuboBuilder {
 public:
  explicit QuboBuilder(int n) : qubo_(QuboProblem::zeros(n)) {}

  void constant(double v) { qubo_.offset += v; }
  void linear(int i, double v) { qubo_.b[i] += v; }
  void quadratic(int i, int k, double v) {
    if (i == k) {
      qubo_.b[i] += v;
    } else {
      qubo_.A(std::min(i, k), std::max(i, k)) += v;
    }
  }

  // s + t x_var (var < 0 means the constant s only).
  struct Affine {
    double s = 0.0;
    double t = 0.0;
    int var = -1;
  };

  void product(const Affine& a, const Affine& b, double coef) {
    constant(coef * a.s * b.s);
    if (b.var >= 0) linear(b.var, coef * a.s * b.t);
    if (a.var >= 0) linear(a.var, coef * b.s * a.t);
    if (a.var >= 0 && b.var >= 0) quadratic(a.var, b.var, coef * a.t * b.t);
  }
  void affine(const Affine& a, double coef) {
    constant(coef * a.s);
    if (a.var >= 0) linear(a.var, coef * a.t);
  }

  QuboProblem take() { return std::move(qubo_); }

 private:
  QuboProblem qubo_;
};

// Indicator that the literal is false.
QuboBuilder::Affine literal_false(int var, bool negated) {
  return negated ? QuboBuilder::Affine{0.0, 1.0, var} : QuboBuilder::Affine{1.0, -1.0, var};
}

void require_vertex(int v, int n) {
  if (v < 0 || v >= n) throw std::invalid_argument("edge endpoint out of range");
}

}  // namespace

std::string to_string(ProblemClass problem) {
  switch (problem) {
    case ProblemClass::StableSet: return "stable_set";
    case ProblemClass::Max3Sat: return "max3sat";
    case ProblemClass::Partition: return "partition";
    case ProblemClass::MaxCut: return "maxcut";
    case ProblemClass::MarketSplit: return "market_split";
    case ProblemClass::Portfolio: return "portfolio";
  }
  return "?";
}

ProblemClass problem_from_string(const std::string& name) {
  for (auto p : kAllProblems) {
    if (to_string(p) == name) return p;
  }
  throw std::invalid_argument("unknown problem class '" + name + "'");
}

std::span<const ProblemClass> all_problem_classes() { return kAllProblems; }

int Max3SatFormula::count_unsatisfied(std::span<const std::uint8_t> x) const {
  if (static_cast<int>(x.size()) != num_variables) {
    throw std::invalid_argument("assignment length mismatch");
  }
  int unsat = 0;
  for (const auto& clause : clauses) {
    bool satisfied = false;
    for (int t = 0; t < 3; ++t) {
      const bool value = x[clause.variables[t]] != 0;
      satisfied = satisfied || (value != clause.negated[t]);
    }
    unsat += !satisfied;
  }
  return unsat;
}

QuboProblem maxcut_qubo(int num_vertices, std::span<const WeightedEdge> edges) {
  QuboBuilder q(num_vertices);
  for (const auto& e : edges) {
    require_vertex(e.u, num_vertices);
    require_vertex(e.v, num_vertices);
    q.linear(e.u, -e.weight);
    q.linear(e.v, -e.weight);
    q.quadratic(e.u, e.v, 2.0 * e.weight);
  }
  return q.take();
}

QuboProblem stable_set_qubo(int num_vertices, std::span<const WeightedEdge> edges,
                            double penalty) {
  QuboBuilder q(num_vertices);
  for (int i = 0; i < num_vertices; ++i) q.linear(i, -1.0);
  for (const auto& e : edges) {
    require_vertex(e.u, num_vertices);
    require_vertex(e.v, num_vertices);
    q.quadratic(e.u, e.v, penalty);
  }
  return q.take();
}

QuboProblem partition_qubo(std::span<const double> numbers) {
  const int n = static_cast<int>(numbers.size());
  if (n < 1) throw std::invalid_argument("partition needs at least one number");
  double total = 0.0;
  for (double a : numbers) total += a;
  // (T - 2 sum a_i x_i)^2
  QuboBuilder q(n);
  q.constant(total * total);
  for (int i = 0; i < n; ++i) {
    q.linear(i, -4.0 * total * numbers[i]);
    for (int k = 0; k < n; ++k) q.quadratic(i, k, 4.0 * numbers[i] * numbers[k]);
  }
  return q.take();
}

QuboProblem market_split_qubo(const Eigen::MatrixXd& coefficients, const Eigen::VectorXd& targets) {
  if (coefficients.rows() != targets.size()) {
    throw std::invalid_argument("market split: one target per constraint row");
  }
  const int n = static_cast<int>(coefficients.cols());
  QuboBuilder q(n);
  for (Eigen::Index r = 0; r < coefficients.rows(); ++r) {
    const double d = targets[r];
    q.constant(d * d);
    for (int j = 0; j < n; ++j) {
      q.linear(j, -2.0 * d * coefficients(r, j));
      for (int k = 0; k < n; ++k) q.quadratic(j, k, coefficients(r, j) * coefficients(r, k));
    }
  }
  return q.take();
}

QuboProblem max3sat_qubo(const Max3SatFormula& formula) {
  const int n = formula.num_qubits();
  QuboBuilder q(n);
  for (std::size_t k = 0; k < formula.clauses.size(); ++k) {
    const auto& clause = formula.clauses[k];
    for (int v : clause.variables) {
      if (v < 0 || v >= formula.num_variables) {
        throw std::invalid_argument("clause variable out of range");
      }
    }
    const auto y1 = literal_false(clause.variables[0], clause.negated[0]);
    const auto y2 = literal_false(clause.variables[1], clause.negated[1]);
    const auto y3 = literal_false(clause.variables[2], clause.negated[2]);
    const QuboBuilder::Affine w{0.0, 1.0, formula.num_variables + static_cast<int>(k)};
    // y1 y2 y3 = min_w [ w y3 + y1 y2 - 2 y1 w - 2 y2 w + 3 w ]
    q.product(w, y3, 1.0);
    q.product(y1, y2, 1.0);
    q.product(y1, w, -2.0);
    q.product(y2, w, -2.0);
    q.affine(w, 3.0);
  }
  return q.take();
}

QuboProblem portfolio_qubo(const PortfolioInstance& p) {
  const int n = static_cast<int>(p.mu.size());
  if (n < 1 || p.sigma.rows() != n || p.sigma.cols() != n) {
    throw std::invalid_argument("portfolio: mu and sigma dimensions disagree");
  }
  // Minimization form: -sum mu x + q x^T sigma x + lambda (B - sum x)^2.
  QuboProblem qubo = QuboProblem::zeros(n);
  const double budget = p.budget;
  for (int i = 0; i < n; ++i) {
    qubo.b[i] = -p.mu[i] - 2.0 * p.penalty * budget;
    for (int k = 0; k < n; ++k) qubo.A(i, k) = p.risk_factor * p.sigma(i, k) + p.penalty;
  }
  qubo.offset = p.penalty * budget * budget;
  return qubo;
}

std::vector<WeightedEdge> random_graph(int num_vertices, double density, int weight_min,
                                       int weight_max, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<WeightedEdge> edges;
  for (int u = 0; u < num_vertices; ++u) {
    for (int v = u + 1; v < num_vertices; ++v) {
      const bool present = uniform_unit(rng) < density;
      const int w = uniform_int(rng, weight_min, weight_max);
      if (present) edges.push_back({u, v, static_cast<double>(w)});
    }
  }
  return edges;
}

void InstanceSpec::validate() const {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("instance qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
  if (problem == ProblemClass::Max3Sat && num_qubits % 3 != 0) {
    throw std::invalid_argument("max3sat needs a qubit count that is a multiple of three, got " +
                                std::to_string(num_qubits));
  }
  if (problem == ProblemClass::Portfolio && num_qubits < 2) {
    throw std::invalid_argument("portfolio needs at least two assets");
  }
  if (!(edge_density >= 0.0 && edge_density <= 1.0)) {
    throw std::invalid_argument("edge density must lie in [0, 1]");
  }
  if (weight_min > weight_max || partition_max < 1 || market_coefficient_max < 1) {
    throw std::invalid_argument("invalid generator ranges");
  }
}

GeneratedInstance generate(const InstanceSpec& spec) {
  spec.validate();
  const int n = spec.num_qubits;
  GeneratedInstance out{spec, QuboProblem::zeros(n), nlohmann::json::object()};
  Rng rng(derive_seed(spec.seed, hash_string(to_string(spec.problem)),
                      static_cast<std::uint64_t>(n)));

  auto edges_json = [](const std::vector<WeightedEdge>& edges) {
    auto arr = nlohmann::json::array();
    for (const auto& e : edges) arr.push_back({e.u, e.v, e.weight});
    return arr;
  };

  switch (spec.problem) {
    case ProblemClass::MaxCut: {
      const auto edges = random_graph(n, spec.edge_density, spec.weight_min, spec.weight_max, rng());
      out.qubo = maxcut_qubo(n, edges);
      out.details["edges"] = edges_json(edges);
      break;
    }
    case ProblemClass::StableSet: {
      const auto edges = random_graph(n, spec.edge_density, 1, 1, rng());
      out.qubo = stable_set_qubo(n, edges, spec.stable_set_penalty);
      out.details["edges"] = edges_json(edges);
      out.details["penalty"] = spec.stable_set_penalty;
      break;
    }
    case ProblemClass::Partition: {
      std::vector<double> numbers(n);
      for (auto& a : numbers) a = uniform_int(rng, 1, spec.partition_max);
      out.qubo = partition_qubo(numbers);
      out.details["numbers"] = numbers;
      break;
    }
    case ProblemClass::Max3Sat: {
      Max3SatFormula formula;
      formula.num_variables = n / 3;
      const int num_clauses = n - formula.num_variables;
      // Three distinct variables by partial Fisher-Yates; with fewer than
      // three variables (six qubits) literals are drawn with replacement.
      const bool distinct = formula.num_variables >= 3;
      auto arr = nlohmann::json::array();
      for (int k = 0; k < num_clauses; ++k) {
        Clause clause;
        std::vector<int> pool(formula.num_variables);
        for (int v = 0; v < formula.num_variables; ++v) pool[v] = v;
        for (int t = 0; t < 3; ++t) {
          if (distinct) {
            const int pick = t + static_cast<int>(uniform_below(rng, pool.size() - t));
            std::swap(pool[t], pool[pick]);
            clause.variables[t] = pool[t];
          } else {
            clause.variables[t] = static_cast<int>(uniform_below(rng, pool.size()));
          }
          clause.negated[t] = uniform_below(rng, 2) == 1;
        }
        formula.clauses.push_back(clause);
        arr.push_back({{"variables", clause.variables}, {"negated", clause.negated}});
      }
      out.qubo = max3sat_qubo(formula);
      out.details["num_variables"] = formula.num_variables;
      out.details["clauses"] = std::move(arr);
      break;
    }
    case ProblemClass::MarketSplit: {
      const int m = (n + 4) / 5;
      Eigen::MatrixXd coefficients(m, n);
      Eigen::VectorXd targets(m);
      for (int r = 0; r < m; ++r) {
        double row_sum = 0.0;
        for (int j = 0; j < n; ++j) {
          coefficients(r, j) = uniform_int(rng, 1, spec.market_coefficient_max);
          row_sum += coefficients(r, j);
        }
        targets[r] = std::floor(row_sum / 2.0);
      }
      out.qubo = market_split_qubo(coefficients, targets);
      auto rows = nlohmann::json::array();
      for (int r = 0; r < m; ++r) {
        std::vector<double> row(n);
        for (int j = 0; j < n; ++j) row[j] = coefficients(r, j);
        rows.push_back(row);
      }
      out.details["coefficients"] = std::move(rows);
      out.details["targets"] = std::vector<double>(targets.data(), targets.data() + m);
      break;
    }
    case ProblemClass::Portfolio: {
      PortfolioInstance p;
      p.mu.resize(n);
      for (int i = 0; i < n; ++i) p.mu[i] = uniform_unit(rng);
      Eigen::MatrixXd factor(n, n);
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) factor(i, k) = uniform_real(rng, -1.0, 1.0);
      }
      const Eigen::MatrixXd s = factor * factor.transpose() / static_cast<double>(n);
      p.sigma = 0.5 * (s + s.transpose());
      p.risk_factor = spec.portfolio_risk_factor;
      p.budget = n / 2;
      p.penalty = spec.portfolio_penalty;
      out.qubo = portfolio_qubo(p);
      out.details = p;
      break;
    }
  }
  return out;
}

void to_json(nlohmann::json& j, const InstanceSpec& spec) {
  j = nlohmann::json{{"problem", to_string(spec.problem)},
                     {"n_qubits", spec.num_qubits},
                     {"seed", spec.seed},
                     {"params",
                      {{"edge_density", spec.edge_density},
                       {"weight_min", spec.weight_min},
                       {"weight_max", spec.weight_max},
                       {"stable_set_penalty", spec.stable_set_penalty},
                       {"partition_max", spec.partition_max},
                       {"market_coefficient_max", spec.market_coefficient_max},
                       {"portfolio_risk_factor", spec.portfolio_risk_factor},
                       {"portfolio_penalty", spec.portfolio_penalty}}}};
}

void from_json(const nlohmann::json& j, InstanceSpec& spec) {
  spec = InstanceSpec{};
  spec.problem = problem_from_string(j.at("problem").get<std::string>());
  spec.num_qubits = j.at("n_qubits").get<int>();
  spec.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("params")) {
    const auto& p = j.at("params");
    spec.edge_density = p.value("edge_density", spec.edge_density);
    spec.weight_min = p.value("weight_min", spec.weight_min);
    spec.weight_max = p.value("weight_max", spec.weight_max);
    spec.stable_set_penalty = p.value("stable_set_penalty", spec.stable_set_penalty);
    spec.partition_max = p.value("partition_max", spec.partition_max);
    spec.market_coefficient_max = p.value("market_coefficient_max", spec.market_coefficient_max);
    spec.portfolio_risk_factor = p.value("portfolio_risk_factor", spec.portfolio_risk_factor);
    spec.portfolio_penalty = p.value("portfolio_penalty", spec.portfolio_penalty);
  }
}

void to_json(nlohmann::json& j, const PortfolioInstance& p) {
  const auto n = p.mu.size();
  auto sigma = nlohmann::json::array();
  for (Eigen::Index r = 0; r < n; ++r) {
    std::vector<double> row(static_cast<std::size_t>(n));
    for (Eigen::Index c = 0; c < n; ++c) row[c] = p.sigma(r, c);
    sigma.push_back(row);
  }
  j = nlohmann::json{{"n", n},
                     {"mu", std::vector<double>(p.mu.data(), p.mu.data() + n)},
                     {"sigma", std::move(sigma)},
                     {"q", p.risk_factor},
                     {"B", p.budget},
                     {"lambda", p.penalty}};
}

void from_json(const nlohmann::json& j, PortfolioInstance& p) {
  const auto mu = j.at("mu").get<std::vector<double>>();
  const auto sigma = j.at("sigma").get<std::vector<std::vector<double>>>();
  const auto n = static_cast<Eigen::Index>(mu.size());
  if (j.contains("n") && j.at("n").get<Eigen::Index>() != n) {
    throw std::invalid_argument("portfolio: n disagrees with mu");
  }
  if (static_cast<Eigen::Index>(sigma.size()) != n) {
    throw std::invalid_argument("portfolio: sigma has the wrong number of rows");
  }
  p.mu = Eigen::Map<const Eigen::VectorXd>(mu.data(), n);
  p.sigma.resize(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (static_cast<Eigen::Index>(sigma[r].size()) != n) {
      throw std::invalid_argument("portfolio: sigma row has the wrong length");
    }
    for (Eigen::Index c = 0; c < n; ++c) p.sigma(r, c) = sigma[r][c];
  }
  p.risk_factor = j.at("q").get<double>();
  p.budget = j.at("B").get<int>();
  p.penalty = j.at("lambda").get<double>();
}

}  // namespace cvarqo
