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

#include "cvarqo/ansatz.hpp"

#include <stdexcept>

namespace cvarqo {
namespace {

void require_parameters(const AnsatzSpec& spec, std::span<const double> theta) {
  if (theta.size() != spec.parameter_count()) {
    throw std::invalid_argument(to_string(spec.family) + " ansatz expects " +
                                std::to_string(spec.parameter_count()) + " parameters, got " +
                                std::to_string(theta.size()));
  }
}

void append_entangler(Circuit& circuit, Entanglement entanglement) {
  const int n = circuit.num_qubits();
  if (entanglement == Entanglement::AllToAll) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) circuit.add(Gate::cz(i, j));
    }
    return;
  }
  if (n == 2) {
    circuit.add(Gate::cz(0, 1));
    return;
  }
  if (n < 2) return;
  for (int i = 0; i < n; ++i) circuit.add(Gate::cz(i, (i + 1) % n));
}

}  // namespace

std::string to_string(AnsatzFamily family) {
  return family == AnsatzFamily::Vqe ? "vqe" : "qaoa";
}

std::string to_string(Entanglement entanglement) {
  return entanglement == Entanglement::AllToAll ? "all-to-all" : "ring";
}

Entanglement entanglement_from_string(const std::string& name) {
  if (name == "all-to-all" || name == "full") return Entanglement::AllToAll;
  if (name == "ring" || name == "linear-ring") return Entanglement::Ring;
  throw std::invalid_argument("unknown entanglement '" + name + "'");
}

AnsatzSpec AnsatzSpec::vqe(int num_qubits, int depth, Entanglement entanglement) {
  AnsatzSpec spec{AnsatzFamily::Vqe, num_qubits, depth, entanglement, std::nullopt};
  spec.validate();
  return spec;
}

AnsatzSpec AnsatzSpec::qaoa(IsingModel ising, int depth) {
  const int n = ising.num_spins();
  AnsatzSpec spec{AnsatzFamily::Qaoa, n, depth, Entanglement::AllToAll, std::move(ising)};
  spec.validate();
  return spec;
}

std::size_t AnsatzSpec::parameter_count() const {
  if (family == AnsatzFamily::Vqe) {
    return static_cast<std::size_t>(num_qubits) * static_cast<std::size_t>(1 + depth);
  }
  return 2 * static_cast<std::size_t>(depth);
}

void AnsatzSpec::validate() const {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("ansatz qubit count out of range");
  }
  if (family == AnsatzFamily::Vqe) {
    if (depth < 0) throw std::invalid_argument("VQE depth must be >= 0");
    return;
  }
  if (depth < 1) throw std::invalid_argument("QAOA depth must be >= 1");
  if (!ising) throw std::invalid_argument("QAOA ansatz requires an Ising model");
  ising->validate();
  if (ising->num_spins() != num_qubits) {
    throw std::invalid_argument("QAOA Ising model size does not match qubit count");
  }
}

Circuit build_vqe_circuit(const AnsatzSpec& spec, std::span<const double> theta) {
  if (spec.family != AnsatzFamily::Vqe) throw std::invalid_argument("not a VQE ansatz");
  spec.validate();
  require_parameters(spec, theta);
  const int n = spec.num_qubits;
  Circuit circuit(n);
  for (int i = 0; i < n; ++i) circuit.add(Gate::ry(i, theta[i]));
  for (int k = 1; k <= spec.depth; ++k) {
    append_entangler(circuit, spec.entanglement);
    for (int i = 0; i < n; ++i) circuit.add(Gate::ry(i, theta[k * n + i]));
  }
  return circuit;
}

void append_cost_layer(Circuit& circuit, const IsingModel& ising, double gamma) {
  const int n = ising.num_spins();
  for (int j = 0; j < n; ++j) {
    if (ising.c[j] != 0.0) circuit.add(Gate::rz(j, 2.0 * gamma * ising.c[j]));
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      // Q is stored upper triangular; Q(k, j) is zero after validation.
      const double coupling = ising.Q(j, k) + ising.Q(k, j);
      if (coupling == 0.0) continue;
      circuit.add(Gate::cnot(j, k));
      circuit.add(Gate::rz(k, 2.0 * gamma * coupling));
      circuit.add(Gate::cnot(j, k));
    }
  }
}

void append_mixer_layer(Circuit& circuit, double beta) {
  for (int j = 0; j < circuit.num_qubits(); ++j) circuit.add(Gate::rx(j, 2.0 * beta));
}

Circuit build_qaoa_circuit(const AnsatzSpec& spec, std::span<const double> theta) {
  if (spec.family != AnsatzFamily::Qaoa) throw std::invalid_argument("not a QAOA ansatz");
  spec.validate();
  require_parameters(spec, theta);
  const int p = spec.depth;
  Circuit circuit(spec.num_qubits);
  for (int j = 0; j < spec.num_qubits; ++j) circuit.add(Gate::h(j));
  for (int layer = 0; layer < p; ++layer) {
    append_cost_layer(circuit, *spec.ising, theta[p + layer]);
    append_mixer_layer(circuit, theta[layer]);
  }
  return circuit;
}

Circuit build_circuit(const AnsatzSpec& spec, std::span<const double> theta) {
  return spec.family == AnsatzFamily::Vqe ? build_vqe_circuit(spec, theta)
                                          : build_qaoa_circuit(spec, theta);
}

StateVector trial_state(const AnsatzSpec& spec, std::span<const double> theta) {
  const Circuit circuit = build_circuit(spec, theta);
  return run_circuit(circuit, StateVector(spec.num_qubits));
}

std::vector<StateVector> qaoa_layer_snapshots(const AnsatzSpec& spec,
                                              std::span<const double> theta) {
  if (spec.family != AnsatzFamily::Qaoa) throw std::invalid_argument("not a QAOA ansatz");
  spec.validate();
  require_parameters(spec, theta);
  const int n = spec.num_qubits;
  const int p = spec.depth;

  Circuit hadamards(n);
  for (int j = 0; j < n; ++j) hadamards.add(Gate::h(j));
  std::vector<StateVector> snapshots;
  snapshots.reserve(p + 1);
  snapshots.push_back(run_circuit(hadamards, StateVector(n)));
  for (int layer = 0; layer < p; ++layer) {
    Circuit step(n);
    append_cost_layer(step, *spec.ising, theta[p + layer]);
    append_mixer_layer(step, theta[layer]);
    snapshots.push_back(run_circuit(step, snapshots.back()));
  }
  return snapshots;
}

}  // namespace cvarqo
