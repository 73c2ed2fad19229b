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

#include "cvarqo/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <utility>

namespace cvarqo {
namespace {

constexpr Complex kI{0.0, 1.0};

BasisIndex qubit_mask(int num_qubits, int qubit) {
  return BasisIndex{1} << (num_qubits - 1 - qubit);
}

void single_qubit_matrix(const Gate& gate, Complex (&m)[4]) {
  const double c = std::cos(gate.angle / 2.0);
  const double s = std::sin(gate.angle / 2.0);
  switch (gate.kind) {
    case GateKind::RY:
      m[0] = c;  m[1] = -s;
      m[2] = s;  m[3] = c;
      return;
    case GateKind::RX:
      m[0] = c;        m[1] = -kI * s;
      m[2] = -kI * s;  m[3] = c;
      return;
    case GateKind::RZ:
      m[0] = Complex{c, -s};  m[1] = 0.0;
      m[2] = 0.0;             m[3] = Complex{c, s};
      return;
    case GateKind::H: {
      const double r = std::numbers::sqrt2 / 2.0;
      m[0] = r;  m[1] = r;
      m[2] = r;  m[3] = -r;
      return;
    }
    default:
      throw InvalidGateError("not a single-qubit gate: " + to_string(gate.kind));
  }
}

}  // namespace

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::RY: return "RY";
    case GateKind::RX: return "RX";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::CZ: return "CZ";
    case GateKind::CNOT: return "CNOT";
  }
  return "?";
}

void validate_gate(const Gate& gate, int num_qubits) {
  if (gate.target < 0 || gate.target >= num_qubits) {
    throw InvalidGateError(to_string(gate.kind) + ": target qubit " + std::to_string(gate.target) +
                           " out of range for " + std::to_string(num_qubits) + " qubits");
  }
  if (!gate.is_two_qubit()) return;
  if (gate.control < 0 || gate.control >= num_qubits) {
    throw InvalidGateError(to_string(gate.kind) + ": control qubit " +
                           std::to_string(gate.control) + " out of range for " +
                           std::to_string(num_qubits) + " qubits");
  }
  if (gate.control == gate.target) {
    throw InvalidGateError(to_string(gate.kind) + ": control and target coincide");
  }
}

std::vector<Complex> gate_matrix(const Gate& gate) {
  if (gate.kind == GateKind::CZ) {
    std::vector<Complex> m(16, 0.0);
    m[0] = m[5] = m[10] = 1.0;
    m[15] = -1.0;
    return m;
  }
  if (gate.kind == GateKind::CNOT) {
    std::vector<Complex> m(16, 0.0);
    m[0] = m[5] = 1.0;
    m[2 * 4 + 3] = m[3 * 4 + 2] = 1.0;
    return m;
  }
  Complex m[4];
  single_qubit_matrix(gate, m);
  return {m[0], m[1], m[2], m[3]};
}

StateVector::StateVector(int num_qubits) : StateVector(basis_state(num_qubits, 0)) {}

StateVector::StateVector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::basis_state(int num_qubits, BasisIndex index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                "], got " + std::to_string(num_qubits));
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) {
    throw std::out_of_range("basis index " + std::to_string(index) + " out of range");
  }
  std::vector<Complex> amps(dim, 0.0);
  amps[index] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("amplitude count must be a power of two >= 2");
  }
  const int n = std::countr_zero(dim);
  if (n > kMaxQubits) throw std::invalid_argument("too many qubits");
  return StateVector(n, std::move(amplitudes));
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amplitudes_) total += std::norm(a);
  return total;
}

void StateVector::apply_single_qubit(int qubit, const Complex (&m)[4]) {
  const BasisIndex mask = qubit_mask(num_qubits_, qubit);
  const std::size_t dim = amplitudes_.size();
  for (BasisIndex i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const Complex a0 = amplitudes_[i];
    const Complex a1 = amplitudes_[i | mask];
    amplitudes_[i] = m[0] * a0 + m[1] * a1;
    amplitudes_[i | mask] = m[2] * a0 + m[3] * a1;
  }
}

void StateVector::apply(const Gate& gate) {
  validate_gate(gate, num_qubits_);
  const std::size_t dim = amplitudes_.size();
  switch (gate.kind) {
    case GateKind::CZ: {
      const BasisIndex both =
          qubit_mask(num_qubits_, gate.control) | qubit_mask(num_qubits_, gate.target);
      for (BasisIndex i = 0; i < dim; ++i) {
        if ((i & both) == both) amplitudes_[i] = -amplitudes_[i];
      }
      return;
    }
    case GateKind::CNOT: {
      const BasisIndex cmask = qubit_mask(num_qubits_, gate.control);
      const BasisIndex tmask = qubit_mask(num_qubits_, gate.target);
      for (BasisIndex i = 0; i < dim; ++i) {
        if ((i & cmask) && !(i & tmask)) std::swap(amplitudes_[i], amplitudes_[i | tmask]);
      }
      return;
    }
    case GateKind::RZ: {
      // Diagonal: skip the generic 2x2 update.
      const BasisIndex mask = qubit_mask(num_qubits_, gate.target);
      const Complex phase0 = std::polar(1.0, -gate.angle / 2.0);
      const Complex phase1 = std::polar(1.0, gate.angle / 2.0);
      for (BasisIndex i = 0; i < dim; ++i) amplitudes_[i] *= (i & mask) ? phase1 : phase0;
      return;
    }
    default: {
      Complex m[4];
      single_qubit_matrix(gate, m);
      apply_single_qubit(gate.target, m);
      return;
    }
  }
}

StateVector apply_gate(StateVector state, const Gate& gate) {
  state.apply(gate);
  return state;
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("circuit qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
}

std::size_t Circuit::count(GateKind kind) const {
  std::size_t total = 0;
  for (const auto& g : gates_) total += (g.kind == kind);
  return total;
}

Circuit& Circuit::add(const Gate& gate) {
  validate_gate(gate, num_qubits_);
  gates_.push_back(gate);
  return *this;
}

StateVector run_circuit(const Circuit& circuit, StateVector initial) {
  if (circuit.num_qubits() != initial.num_qubits()) {
    throw std::invalid_argument("circuit acts on " + std::to_string(circuit.num_qubits()) +
                                " qubits but the state has " +
                                std::to_string(initial.num_qubits()));
  }
  for (const auto& gate : circuit.gates()) initial.apply(gate);
  return initial;
}

std::vector<double> probabilities(const StateVector& state) {
  std::vector<double> probs;
  probs.reserve(state.dimension());
  for (const auto& a : state.amplitudes()) probs.push_back(std::norm(a));
  return probs;
}

}  // namespace cvarqo
