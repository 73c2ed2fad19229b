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

// Seeded instance generators for the benchmark problem classes. Each one
// emits a QUBO in minimization form.
//
// Generator defaults (the benchmark instances themselves are not public):
//   graphs        G(n, 0.5), integer edge weights uniform in [1, 10]
//   stable set    unit vertex weights, edge penalty M = 2
//   partition     integers uniform in [1, 100]
//   max3sat       n/3 variables, 2n/3 clauses, one ancilla qubit per clause
//   market split  ceil(n/5) constraints, coefficients uniform in [1, 9],
//                 d_i = floor(sum_j A_ij / 2)
//   portfolio     mu uniform in [0, 1], sigma = F F^T / n with F uniform in
//                 [-1, 1], q = 0.5, B = floor(n/2), lambda = 12

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "cvarqo/hamiltonian.hpp"

namespace cvarqo {

enum class ProblemClass { StableSet, Max3Sat, Partition, MaxCut, MarketSplit, Portfolio };

std::string to_string(ProblemClass problem);
ProblemClass problem_from_string(const std::string& name);
std::span<const ProblemClass> all_problem_classes();

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double weight = 1.0;
};

struct Clause {
  std::array<int, 3> variables{};
  std::array<bool, 3> negated{};
};

struct Max3SatFormula {
  int num_variables = 0;
  std::vector<Clause> clauses;

  int num_qubits() const { return num_variables + static_cast<int>(clauses.size()); }
  /// x has num_variables entries.
  int count_unsatisfied(std::span<const std::uint8_t> x) const;
};

struct PortfolioInstance {
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
  double risk_factor = 0.5;  // q
  int budget = 0;            // B
  double penalty = 12.0;     // lambda
};

struct InstanceSpec {
  ProblemClass problem = ProblemClass::MaxCut;
  int num_qubits = 6;
  std::uint64_t seed = 0;
  double edge_density = 0.5;
  int weight_min = 1;
  int weight_max = 10;
  double stable_set_penalty = 2.0;
  int partition_max = 100;
  int market_coefficient_max = 9;
  double portfolio_risk_factor = 0.5;
  double portfolio_penalty = 12.0;

  void validate() const;
};

struct GeneratedInstance {
  InstanceSpec spec;
  QuboProblem qubo;
  /// Class-specific raw data (graph, clauses, numbers, ...).
  nlohmann::json details;
};

/// Deterministic in (spec). Throws std::invalid_argument for an invalid
/// spec, including max3sat sizes that are not a multiple of three.
GeneratedInstance generate(const InstanceSpec& spec);

/// minimize -sum_{(i,j)} w_ij (x_i + x_j - 2 x_i x_j).
QuboProblem maxcut_qubo(int num_vertices, std::span<const WeightedEdge> edges);

/// minimize -sum_i x_i + M sum_{(i,j)} x_i x_j.
QuboProblem stable_set_qubo(int num_vertices, std::span<const WeightedEdge> edges,
                            double penalty = 2.0);

/// (sum_i a_i z_i)^2 with z_i = 1 - 2 x_i.
QuboProblem partition_qubo(std::span<const double> numbers);

/// sum_i (sum_j A_ij x_j - d_i)^2.
QuboProblem market_split_qubo(const Eigen::MatrixXd& coefficients, const Eigen::VectorXd& targets);

/// Number of unsatisfied clauses, quadratized with one ancilla per clause.
/// Qubits [0, num_variables) are the variables and qubit num_variables + k
/// is the ancilla of clause k. For every variable assignment the minimum
/// over ancilla assignments equals the unsatisfied-clause count exactly.
QuboProblem max3sat_qubo(const Max3SatFormula& formula);

/// -[sum mu_i x_i - q sum sigma_ij x_i x_j - lambda (B - sum x_i)^2].
QuboProblem portfolio_qubo(const PortfolioInstance& instance);

std::vector<WeightedEdge> random_graph(int num_vertices, double density, int weight_min,
                                       int weight_max, std::uint64_t seed);

void to_json(nlohmann::json& j, const InstanceSpec& spec);
void from_json(const nlohmann::json& j, InstanceSpec& spec);
void to_json(nlohmann::json& j, const PortfolioInstance& p);
void from_json(const nlohmann::json& j, PortfolioInstance& p);

}  // namespace cvarqo
