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

#include "cvarqo/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace cvarqo {
namespace {

void require_square(const Eigen::MatrixXd& m, Eigen::Index n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    throw std::invalid_argument(std::string(what) + " must be " + std::to_string(n) + "x" +
                                std::to_string(n));
  }
}

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + " has non-finite entries");
}

}  // namespace

QuboProblem QuboProblem::zeros(int n) {
  return {Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n), 0.0};
}

void QuboProblem::validate() const {
  if (b.size() < 1) throw std::invalid_argument("QUBO needs at least one variable");
  require_square(A, b.size(), "QUBO matrix A");
  require_finite(b, "QUBO vector b");
  require_finite(A, "QUBO matrix A");
  if (!std::isfinite(offset)) throw std::invalid_argument("QUBO offset is not finite");
}

double QuboProblem::evaluate(std::span<const std::uint8_t> x) const {
  const int n = num_variables();
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("assignment length mismatch");
  double value = offset;
  for (int i = 0; i < n; ++i) {
    if (!x[i]) continue;
    value += b[i];
    for (int k = 0; k < n; ++k) {
      if (x[k]) value += A(i, k);
    }
  }
  return value;
}

double QuboProblem::evaluate_index(BasisIndex index) const {
  const int n = num_variables();
  std::vector<std::uint8_t> x(n);
  for (int i = 0; i < n; ++i) x[i] = bit_of(index, n, i);
  return evaluate(x);
}

void IsingModel::validate() const {
  const auto n = c.size();
  if (n < 1) throw std::invalid_argument("Ising model needs at least one spin");
  require_square(Q, n, "Ising matrix Q");
  require_finite(c, "Ising vector c");
  require_finite(Q, "Ising matrix Q");
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k <= i; ++k) {
      if (Q(i, k) != 0.0) {
        throw std::invalid_argument("Ising matrix Q must be strictly upper triangular");
      }
    }
  }
  if (!std::isfinite(offset)) throw std::invalid_argument("Ising offset is not finite");
}

double IsingModel::evaluate(std::span<const int> z) const {
  const int n = num_spins();
  if (static_cast<int>(z.size()) != n) throw std::invalid_argument("spin vector length mismatch");
  double value = offset;
  for (int i = 0; i < n; ++i) {
    value += c[i] * z[i];
    for (int k = i + 1; k < n; ++k) value += Q(i, k) * z[i] * z[k];
  }
  return value;
}

double IsingModel::evaluate_index(BasisIndex index) const {
  const int n = num_spins();
  std::vector<int> z(n);
  for (int i = 0; i < n; ++i) z[i] = spin_of(index, n, i);
  return evaluate(z);
}

IsingModel qubo_to_ising(const QuboProblem& qubo) {
  qubo.validate();
  const int n = qubo.num_variables();
  IsingModel m{Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n), qubo.offset};
  // x_i = (1 - z_i)/2 and x_i^2 = x_i:
  //   b_i x_i          -> b_i/2 - (b_i/2) z_i
  //   A_ii x_i         -> A_ii/2 - (A_ii/2) z_i
  //   A_ik x_i x_k     -> A_ik/4 (1 - z_i - z_k + z_i z_k),  i != k
  for (int i = 0; i < n; ++i) {
    m.offset += qubo.b[i] / 2.0 + qubo.A(i, i) / 2.0;
    m.c[i] -= qubo.b[i] / 2.0 + qubo.A(i, i) / 2.0;
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      const double a = qubo.A(i, k) / 4.0;
      m.offset += a;
      m.c[i] -= a;
      m.c[k] -= a;
      m.Q(std::min(i, k), std::max(i, k)) += a;
    }
  }
  return m;
}

DiagonalHamiltonian::DiagonalHamiltonian(int num_qubits, std::vector<double> diagonal,
                                         double offset)
    : num_qubits_(num_qubits), diagonal_(std::move(diagonal)), offset_(offset) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("Hamiltonian qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
  if (diagonal_.size() != (std::size_t{1} << num_qubits)) {
    throw std::invalid_argument("diagonal length must be 2^n");
  }
  for (double v : diagonal_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Hamiltonian has non-finite eigenvalues");
  }
}

DiagonalHamiltonian DiagonalHamiltonian::from_diagonal(std::vector<double> diagonal) {
  const std::size_t dim = diagonal.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("diagonal length must be a power of two >= 2");
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return DiagonalHamiltonian(n, std::move(diagonal));
}

double DiagonalHamiltonian::ground_value() const {
  return *std::min_element(diagonal_.begin(), diagonal_.end());
}

DiagonalHamiltonian ising_to_hamiltonian(const IsingModel& model) {
  model.validate();
  const int n = model.num_spins();
  if (n > kMaxQubits) throw std::invalid_argument("too many spins for a dense Hamiltonian");

  struct Coupling {
    int i, k;
    double weight;
  };
  std::vector<Coupling> couplings;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      if (model.Q(i, k) != 0.0) couplings.push_back({i, k, model.Q(i, k)});
    }
  }

  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> diag(dim);
  std::vector<int> z(n);
  for (BasisIndex j = 0; j < dim; ++j) {
    for (int i = 0; i < n; ++i) z[i] = spin_of(j, n, i);
    double value = model.offset;
    for (int i = 0; i < n; ++i) value += model.c[i] * z[i];
    for (const auto& cp : couplings) value += cp.weight * z[cp.i] * z[cp.k];
    diag[j] = value;
  }
  return DiagonalHamiltonian(n, std::move(diag), model.offset);
}

double evaluate_bitstring(const DiagonalHamiltonian& h, BasisIndex index) {
  if (index >= h.dimension()) {
    throw std::out_of_range("basis index " + std::to_string(index) + " out of range for " +
                            std::to_string(h.num_qubits()) + " qubits");
  }
  return h[index];
}

bool same_energy(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= 1e-9 * scale;
}

std::string bitstring(BasisIndex index, int num_qubits) {
  std::string s(num_qubits, '0');
  for (int i = 0; i < num_qubits; ++i) s[i] = bit_of(index, num_qubits, i) ? '1' : '0';
  return s;
}

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, Eigen::Index n, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n) + " rows");
  }
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw std::invalid_argument(std::string(what) + ": row " + std::to_string(r) +
                                  " has wrong length");
    }
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = row[c].get<double>();
  }
  return m;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j, Eigen::Index n, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(n));
  }
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = j[i].get<double>();
  return v;
}

}  // namespace

void to_json(nlohmann::json& j, const QuboProblem& q) {
  j = nlohmann::json{{"n", q.num_variables()},
                     {"b", std::vector<double>(q.b.data(), q.b.data() + q.b.size())},
                     {"A", matrix_to_json(q.A)},
                     {"offset", q.offset}};
}

void from_json(const nlohmann::json& j, QuboProblem& q) {
  const auto n = j.at("n").get<Eigen::Index>();
  q.b = vector_from_json(j.at("b"), n, "b");
  q.A = matrix_from_json(j.at("A"), n, "A");
  q.offset = j.value("offset", 0.0);
  q.validate();
}

void to_json(nlohmann::json& j, const IsingModel& m) {
  j = nlohmann::json{{"n", m.num_spins()},
                     {"c", std::vector<double>(m.c.data(), m.c.data() + m.c.size())},
                     {"Q", matrix_to_json(m.Q)},
                     {"offset", m.offset}};
}

void from_json(const nlohmann::json& j, IsingModel& m) {
  const auto n = j.at("n").get<Eigen::Index>();
  m.c = vector_from_json(j.at("c"), n, "c");
  m.Q = matrix_from_json(j.at("Q"), n, "Q");
  m.offset = j.value("offset", 0.0);
  m.validate();
}

}  // namespace cvarqo
