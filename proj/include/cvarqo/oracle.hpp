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

// Exhaustive ground truth over all 2^n basis states. Everything else in the
// library is checked against this.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cvarqo/ansatz.hpp"
#include "cvarqo/hamiltonian.hpp"
#include "cvarqo/statevector.hpp"

namespace cvarqo {

struct EnergyLevel {
  double value = 0.0;
  std::size_t multiplicity = 0;
};

struct GroundTruth {
  int num_qubits = 0;
  double min_value = 0.0;
  /// Ascending basis indices attaining min_value (same_energy grouping).
  std::vector<BasisIndex> minimizers;
  /// Distinct levels in ascending order; multiplicities sum to 2^n.
  std::vector<EnergyLevel> histogram;

  /// Largest level multiplicity divided by 2^n.
  double max_level_fraction() const;
};

/// Throws std::invalid_argument for n outside [1, kMaxQubits].
GroundTruth enumerate(const DiagonalHamiltonian& h);
/// Same, with values computed on the fly by `value_of(index)`.
GroundTruth enumerate(int num_qubits, const std::function<double(BasisIndex)>& value_of);

/// Maps a parameter vector to a normalized trial state.
using StatePreparation = std::function<StateVector(std::span<const double>)>;

inline constexpr std::size_t kDefaultLandscapeCap = 100000;

/// Exact CVaR at every grid point. Throws std::invalid_argument when the grid
/// holds more than `max_points` points.
std::vector<double> exact_cvar_landscape(const StatePreparation& prepare,
                                         const DiagonalHamiltonian& h, double alpha,
                                         std::span<const ParameterVector> grid,
                                         std::size_t max_points = kDefaultLandscapeCap);
std::vector<double> exact_cvar_landscape(const AnsatzSpec& spec, const DiagonalHamiltonian& h,
                                         double alpha, std::span<const ParameterVector> grid,
                                         std::size_t max_points = kDefaultLandscapeCap);

/// CVaR of a discrete distribution as max_t [t - E[(t - X)^+] / alpha],
/// maximized over the support. Shares no code with cvar_exact and serves as
/// its cross-check.
double cvar_by_tail_maximization(std::span<const double> values,
                                 std::span<const double> probabilities, double alpha);

}  // namespace cvarqo
