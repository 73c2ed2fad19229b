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

#include "cvarqo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cvarqo/objective.hpp"

namespace cvarqo {

double GroundTruth::max_level_fraction() const {
  std::size_t most = 0;
  for (const auto& level : histogram) most = std::max(most, level.multiplicity);
  return static_cast<double>(most) / std::ldexp(1.0, num_qubits);
}

GroundTruth enumerate(int num_qubits, const std::function<double(BasisIndex)>& value_of) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("enumerate supports 1 to " + std::to_string(kMaxQubits) +
                                " qubits, got " + std::to_string(num_qubits));
  }
  const BasisIndex dim = BasisIndex{1} << num_qubits;
  std::vector<double> values(dim);
  for (BasisIndex j = 0; j < dim; ++j) values[j] = value_of(j);

  GroundTruth truth;
  truth.num_qubits = num_qubits;
  truth.min_value = *std::min_element(values.begin(), values.end());
  for (BasisIndex j = 0; j < dim; ++j) {
    if (same_energy(values[j], truth.min_value)) truth.minimizers.push_back(j);
  }

  std::sort(values.begin(), values.end());
  for (double v : values) {
    if (!truth.histogram.empty() && same_energy(truth.histogram.back().value, v)) {
      ++truth.histogram.back().multiplicity;
    } else {
      truth.histogram.push_back({v, 1});
    }
  }
  return truth;
}

GroundTruth enumerate(const DiagonalHamiltonian& h) {
  return enumerate(h.num_qubits(), [&h](BasisIndex j) { return h[j]; });
}

std::vector<double> exact_cvar_landscape(const StatePreparation& prepare,
                                         const DiagonalHamiltonian& h, double alpha,
                                         std::span<const ParameterVector> grid,
                                         std::size_t max_points) {
  validate_alpha(alpha);
  if (grid.size() > max_points) {
    throw std::invalid_argument("landscape grid has " + std::to_string(grid.size()) +
                                " points, cap is " + std::to_string(max_points));
  }
  std::vector<double> out;
  out.reserve(grid.size());
  for (const auto& theta : grid) {
    const StateVector state = prepare(theta);
    if (state.num_qubits() != h.num_qubits()) {
      throw std::invalid_argument("state and Hamiltonian qubit counts differ");
    }
    out.push_back(cvar_exact(outcome_distribution(state, h), alpha));
  }
  return out;
}

std::vector<double> exact_cvar_landscape(const AnsatzSpec& spec, const DiagonalHamiltonian& h,
                                         double alpha, std::span<const ParameterVector> grid,
                                         std::size_t max_points) {
  spec.validate();
  return exact_cvar_landscape(
      [&spec](std::span<const double> theta) { return trial_state(spec, theta); }, h, alpha,
      grid, max_points);
}

double cvar_by_tail_maximization(std::span<const double> values,
                                 std::span<const double> probabilities, double alpha) {
  validate_alpha(alpha);
  if (values.empty() || values.size() != probabilities.size()) {
    throw std::invalid_argument("values and probabilities must be nonempty and the same length");
  }
  // The concave objective is piecewise linear with kinks at support points,
  // so its maximum is attained at one of them.
  double best = -std::numeric_limits<double>::infinity();
  for (double t : values) {
    double shortfall = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      shortfall += probabilities[j] * std::max(t - values[j], 0.0);
    }
    best = std::max(best, t - shortfall / alpha);
  }
  return best;
}

}  // namespace cvarqo
