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

// QUBO and Ising encodings of a classical objective, and the diagonal
// Hamiltonian they induce on the computational basis.
//
// Spin convention: a basis bit x_i = 0 maps to z_i = +1 and x_i = 1 to
// z_i = -1, i.e. x_i = (1 - z_i) / 2. Bit i of a bitstring is qubit i, which
// is the most significant bit of the basis index (see statevector.hpp).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "cvarqo/statevector.hpp"

namespace cvarqo {

/// minimize offset + b^T x + x^T A x over x in {0,1}^n.
struct QuboProblem {
  Eigen::VectorXd b;
  Eigen::MatrixXd A;
  double offset = 0.0;

  static QuboProblem zeros(int n);

  int num_variables() const { return static_cast<int>(b.size()); }
  void validate() const;

  /// x[i] in {0,1}.
  double evaluate(std::span<const std::uint8_t> x) const;
  /// Bit assignment read from a basis index, qubit 0 most significant.
  double evaluate_index(BasisIndex index) const;
};

/// offset + c^T z + z^T Q z over z in {-1,+1}^n, with Q strictly upper
/// triangular so that z^T Q z = sum_{i<k} Q_ik z_i z_k.
struct IsingModel {
  Eigen::VectorXd c;
  Eigen::MatrixXd Q;
  double offset = 0.0;

  int num_spins() const { return static_cast<int>(c.size()); }
  void validate() const;

  double evaluate(std::span<const int> z) const;
  double evaluate_index(BasisIndex index) const;
  /// Value without the constant offset; this is what the QAOA cost layer encodes.
  double cost_index(BasisIndex index) const { return evaluate_index(index) - offset; }
};

/// Materialized diagonal H_{j,j} for j in [0, 2^n).
class DiagonalHamiltonian {
 public:
  DiagonalHamiltonian(int num_qubits, std::vector<double> diagonal, double offset = 0.0);

  static DiagonalHamiltonian from_diagonal(std::vector<double> diagonal);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return diagonal_.size(); }
  std::span<const double> values() const { return diagonal_; }
  /// Constant part already included in every entry.
  double offset() const { return offset_; }

  double operator[](BasisIndex index) const { return diagonal_[index]; }
  double ground_value() const;

 private:
  int num_qubits_;
  std::vector<double> diagonal_;
  double offset_;
};

IsingModel qubo_to_ising(const QuboProblem& qubo);
DiagonalHamiltonian ising_to_hamiltonian(const IsingModel& model);

/// Range-checked H_{j,j}; throws std::out_of_range.
double evaluate_bitstring(const DiagonalHamiltonian& h, BasisIndex index);

/// Tolerance under which two eigenvalues count as the same level when
/// identifying ground states and degeneracies.
bool same_energy(double a, double b);

/// Spin value z_i in {+1,-1} of qubit i in a basis index.
inline int spin_of(BasisIndex index, int num_qubits, int qubit) {
  return ((index >> (num_qubits - 1 - qubit)) & 1U) ? -1 : 1;
}

inline std::uint8_t bit_of(BasisIndex index, int num_qubits, int qubit) {
  return static_cast<std::uint8_t>((index >> (num_qubits - 1 - qubit)) & 1U);
}

/// "0110..." with qubit 0 first.
std::string bitstring(BasisIndex index, int num_qubits);

void to_json(nlohmann::json& j, const QuboProblem& q);
void from_json(const nlohmann::json& j, QuboProblem& q);
void to_json(nlohmann::json& j, const IsingModel& m);
void from_json(const nlohmann::json& j, IsingModel& m);

}  // namespace cvarqo
