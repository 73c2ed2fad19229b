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

// Amplitude-flatness diagnostics for QAOA states.
//
// delta is the largest fraction of basis states sharing one eigenvalue.
// Delta_t is the largest fraction of amplitudes that coincide after layer t,
// taken as a running minimum over layers. Together they bound every
// amplitude of the depth-p state by
//   (2^{n+1} (2 - Delta_{p-1} - delta) + 1)^p / sqrt(2^n),
// which is 1/sqrt(2^n) at p = 0.
//
// Amplitudes count as equal when both components agree within an absolute
// tolerance (1e-9 by default); clusters are built by single linkage.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"

#include "cvarqo/ansatz.hpp"
#include "cvarqo/hamiltonian.hpp"
#include "cvarqo/statevector.hpp"

namespace cvarqo {

inline constexpr double kAmplitudeTolerance = 1e-9;
inline constexpr double kBoundEqualityTolerance = 1e-12;

struct FlatnessReport {
  int n = 0;
  int p = 0;
  double delta = 1.0;
  /// Delta_t for t = 0..p.
  std::vector<double> Delta_per_layer;
  double max_abs_amplitude = 0.0;
  double bound_value = 0.0;
  bool bound_holds = false;
  /// Slack allowed when comparing against the bound.
  double equality_tolerance = kBoundEqualityTolerance;
  /// Component-wise tolerance used to cluster amplitudes.
  double amplitude_tolerance = kAmplitudeTolerance;
  /// Delta_p = 1/2^n: no two amplitudes coincide.
  bool unstructured = false;
  /// ln of (1/n^3)^{2^n (1 - delta + (p-1)/p)}; absent for p = 0.
  std::optional<double> log_Delta_lower_bound;
  std::optional<bool> lower_bound_holds;
};

double compute_delta(const DiagonalHamiltonian& h);

/// Largest cluster of equal amplitudes divided by 2^n.
double largest_amplitude_cluster(const StateVector& state, double tolerance = kAmplitudeTolerance);

/// Running-minimum cluster fractions of the snapshots (t = 0..p). Throws
/// std::invalid_argument when the list is empty or qubit counts differ.
std::vector<double> compute_Delta(std::span<const StateVector> snapshots,
                                  double tolerance = kAmplitudeTolerance);

double flatness_bound(int n, int p, double delta, double Delta_previous);

/// Assembles the report from measured quantities. `Delta_per_layer` needs
/// p + 1 entries.
FlatnessReport check_bound(int n, int p, double delta, std::span<const double> Delta_per_layer,
                           double max_abs_amplitude, double amplitude_tolerance = kAmplitudeTolerance);

/// QAOA on an arbitrary diagonal cost: phases exp(-i gamma H_jj) applied
/// directly, then the RX mixer. theta = (beta_1..beta_p, gamma_1..gamma_p).
/// Returns the p + 1 layer snapshots.
std::vector<StateVector> diagonal_qaoa_snapshots(const DiagonalHamiltonian& h,
                                                 std::span<const double> theta);

/// Runs the compiled QAOA circuit of `spec` (snapshots per layer) and checks
/// the bound against `h`, the Hamiltonian of spec's Ising model.
FlatnessReport analyze_qaoa(const AnsatzSpec& spec, const DiagonalHamiltonian& h,
                            std::span<const double> theta,
                            double amplitude_tolerance = kAmplitudeTolerance);
/// Same for an arbitrary diagonal cost via diagonal_qaoa_snapshots.
FlatnessReport analyze_diagonal_qaoa(const DiagonalHamiltonian& h, std::span<const double> theta,
                                     double amplitude_tolerance = kAmplitudeTolerance);

/// Value 0 on `marked`, 1 elsewhere.
DiagonalHamiltonian needle_hamiltonian(int num_qubits, BasisIndex marked);

/// Least-squares fit of log2 m(n) = intercept - epsilon n.
struct DecayFit {
  double intercept = 0.0;
  double epsilon = 0.0;
  double predict(int n) const;
};
DecayFit fit_amplitude_decay(std::span<const int> ns, std::span<const double> amplitudes);

void to_json(nlohmann::json& j, const FlatnessReport& report);

}  // namespace cvarqo
