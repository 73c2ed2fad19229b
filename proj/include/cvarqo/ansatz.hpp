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

// The two variational forms: the hardware-efficient RY/CZ circuit used for
// VQE and the Hadamard + alternating cost/mixer circuit used for QAOA.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvarqo/hamiltonian.hpp"
#include "cvarqo/statevector.hpp"

namespace cvarqo {

using ParameterVector = std::vector<double>;

enum class AnsatzFamily { Vqe, Qaoa };
enum class Entanglement { AllToAll, Ring };

std::string to_string(AnsatzFamily family);
std::string to_string(Entanglement entanglement);
Entanglement entanglement_from_string(const std::string& name);

struct AnsatzSpec {
  AnsatzFamily family = AnsatzFamily::Vqe;
  int num_qubits = 1;
  int depth = 0;
  Entanglement entanglement = Entanglement::AllToAll;  // VQE only
  std::optional<IsingModel> ising;                     // QAOA only

  static AnsatzSpec vqe(int num_qubits, int depth,
                        Entanglement entanglement = Entanglement::AllToAll);
  static AnsatzSpec qaoa(IsingModel ising, int depth);

  /// n(1+p) for VQE, 2p for QAOA.
  std::size_t parameter_count() const;
  void validate() const;
};

/// RY layer, then `depth` repetitions of [CZ entangler, RY layer].
/// Parameters are ordered layer-major: theta[k * n + i] drives qubit i in
/// layer k. Ring entanglement uses pairs (i, i+1 mod n); on two qubits the
/// ring degenerates to the single pair (0, 1).
Circuit build_vqe_circuit(const AnsatzSpec& spec, std::span<const double> theta);

/// H on every qubit, then for each layer i the cost unitary with angle
/// gamma_i followed by the mixer with angle beta_i. Parameters are ordered
/// (beta_1..beta_p, gamma_1..gamma_p).
Circuit build_qaoa_circuit(const AnsatzSpec& spec, std::span<const double> theta);

Circuit build_circuit(const AnsatzSpec& spec, std::span<const double> theta);

/// exp(-i gamma (sum c_j Z_j + sum_{j<k} Q_jk Z_j Z_k)): RZ(2 gamma c_j) per
/// nonzero c_j and CNOT, RZ(2 gamma Q_jk), CNOT per nonzero Q_jk. The
/// constant offset is a global phase and emits nothing.
void append_cost_layer(Circuit& circuit, const IsingModel& ising, double gamma);

/// exp(-i beta sum X_j) as RX(2 beta) on every qubit.
void append_mixer_layer(Circuit& circuit, double beta);

/// U(theta)|0...0>.
StateVector trial_state(const AnsatzSpec& spec, std::span<const double> theta);

/// QAOA states after the Hadamard layer (t = 0) and after each full layer
/// t = 1..p; p + 1 entries.
std::vector<StateVector> qaoa_layer_snapshots(const AnsatzSpec& spec,
                                              std::span<const double> theta);

}  // namespace cvarqo
