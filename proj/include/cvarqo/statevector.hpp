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

// Dense state-vector simulation of the gate set used by the VQE and QAOA
// variational forms.
//
// Basis ordering: qubit 0 is the most significant bit of the basis index, so
// on n qubits qubit q lives at bit position n - 1 - q. Rotations follow
// R_A(theta) = exp(-i theta A / 2).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvarqo {

using Complex = std::complex<double>;
using BasisIndex = std::uint64_t;

inline constexpr int kMaxQubits = 20;

class InvalidGateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GateKind { RY, RX, RZ, H, CZ, CNOT };

std::string to_string(GateKind kind);

struct Gate {
  GateKind kind = GateKind::H;
  int target = 0;
  int control = -1;  // only for CZ / CNOT
  double angle = 0.0;

  static Gate ry(int qubit, double angle) { return {GateKind::RY, qubit, -1, angle}; }
  static Gate rx(int qubit, double angle) { return {GateKind::RX, qubit, -1, angle}; }
  static Gate rz(int qubit, double angle) { return {GateKind::RZ, qubit, -1, angle}; }
  static Gate h(int qubit) { return {GateKind::H, qubit, -1, 0.0}; }
  static Gate cz(int control, int target) { return {GateKind::CZ, target, control, 0.0}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, target, control, 0.0}; }

  bool is_two_qubit() const { return kind == GateKind::CZ || kind == GateKind::CNOT; }
};

/// Throws InvalidGateError when an index is out of range or control == target.
void validate_gate(const Gate& gate, int num_qubits);

/// Row-major unitary of the gate on its own wires: 2x2 for one-qubit gates,
/// 4x4 on (control, target) with control as the high bit for two-qubit gates.
std::vector<Complex> gate_matrix(const Gate& gate);

class StateVector {
 public:
  /// |0...0> on num_qubits qubits.
  explicit StateVector(int num_qubits);

  static StateVector basis_state(int num_qubits, BasisIndex index);
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](BasisIndex index) const { return amplitudes_[index]; }
  double norm_squared() const;

  /// In-place application; the free function apply_gate is the value form.
  void apply(const Gate& gate);

 private:
  StateVector(int num_qubits, std::vector<Complex> amplitudes);

  void apply_single_qubit(int qubit, const Complex (&m)[4]);

  int num_qubits_;
  std::vector<Complex> amplitudes_;
};

StateVector apply_gate(StateVector state, const Gate& gate);

class Circuit {
 public:
  explicit Circuit(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  std::size_t count(GateKind kind) const;

  /// Validates indices against num_qubits before appending.
  Circuit& add(const Gate& gate);

 private:
  int num_qubits_;
  std::vector<Gate> gates_;
};

/// Throws std::invalid_argument when the qubit counts differ.
StateVector run_circuit(const Circuit& circuit, StateVector initial);

std::vector<double> probabilities(const StateVector& state);

}  // namespace cvarqo
