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

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

namespace cvarqo {
namespace {

using Dense = Eigen::MatrixXcd;

// Independent reference: the full 2^n x 2^n operator built from Kronecker
// products, with qubit 0 as the leftmost factor.
Dense kron(const Dense& a, const Dense& b) {
  Dense out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Dense single_qubit_matrix(const Gate& g) {
  const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
  const Complex i(0, 1);
  Dense m(2, 2);
  switch (g.kind) {
    case GateKind::RY: m << c, -s, s, c; break;
    case GateKind::RX: m << c, -i * s, -i * s, c; break;
    case GateKind::RZ: m << std::exp(-i * g.angle / 2.0), 0, 0, std::exp(i * g.angle / 2.0); break;
    case GateKind::H: m << 1, 1, 1, -1; m /= std::sqrt(2.0); break;
    default: ADD_FAILURE();
  }
  return m;
}

Dense embed(const Gate& g, int n) {
  const Dense id = Dense::Identity(2, 2);
  if (!g.is_two_qubit()) {
    Dense out = Dense::Identity(1, 1);
    for (int q = 0; q < n; ++q) out = kron(out, q == g.target ? single_qubit_matrix(g) : id);
    return out;
  }
  // |0><0|_c (x) I + |1><1|_c (x) U_t
  Dense p0 = Dense::Zero(2, 2), p1 = Dense::Zero(2, 2), u(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  if (g.kind == GateKind::CZ) {
    u << 1, 0, 0, -1;
  } else {
    u << 0, 1, 1, 0;
  }
  Dense a = Dense::Identity(1, 1), b = Dense::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    a = kron(a, q == g.control ? p0 : id);
    b = kron(b, q == g.control ? p1 : (q == g.target ? u : id));
  }
  return a + b;
}

Eigen::VectorXcd to_eigen(const StateVector& s) {
  Eigen::VectorXcd v(s.dimension());
  for (std::size_t j = 0; j < s.dimension(); ++j) v[j] = s[j];
  return v;
}

Gate random_gate(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> kind(0, 5), qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(-2 * std::numbers::pi, 2 * std::numbers::pi);
  const auto k = static_cast<GateKind>(kind(rng));
  const int t = qubit(rng);
  int c = qubit(rng);
  while (c == t) c = qubit(rng);
  switch (k) {
    case GateKind::CZ: return Gate::cz(c, t);
    case GateKind::CNOT: return Gate::cnot(c, t);
    case GateKind::H: return Gate::h(t);
    default: return Gate{k, t, -1, angle(rng)};
  }
}

TEST(StateVector, StartsInAllZeros) {
  const StateVector s(3);
  EXPECT_EQ(s.dimension(), 8u);
  EXPECT_EQ(s[0], Complex(1.0, 0.0));
  EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
}

TEST(StateVector, QubitZeroIsMostSignificantBit) {
  StateVector s(3);
  s.apply(Gate::rx(0, std::numbers::pi));  // X up to phase
  EXPECT_NEAR(std::norm(s[4]), 1.0, 1e-15);
  StateVector t(3);
  t.apply(Gate::rx(2, std::numbers::pi));
  EXPECT_NEAR(std::norm(t[1]), 1.0, 1e-15);
}

TEST(StateVector, RyOnZeroGivesCosSin) {
  StateVector s(1);
  s.apply(Gate::ry(0, 1.2));
  EXPECT_NEAR(s[0].real(), std::cos(0.6), 1e-15);
  EXPECT_NEAR(s[1].real(), std::sin(0.6), 1e-15);
}

TEST(StateVector, RzIsDiagonalPhasePair) {
  StateVector s = StateVector::basis_state(1, 1);
  s.apply(Gate::rz(0, 0.8));
  EXPECT_NEAR(std::abs(s[1] - std::polar(1.0, 0.4)), 0.0, 1e-15);
}

TEST(StateVector, MatchesKroneckerReferenceOnRandomCircuits) {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      StateVector s(n);
      Eigen::VectorXcd ref = to_eigen(s);
      for (int k = 0; k < 25; ++k) {
        const Gate g = random_gate(rng, n);
        s.apply(g);
        ref = embed(g, n) * ref;
      }
      EXPECT_LT((to_eigen(s) - ref).cwiseAbs().maxCoeff(), 1e-12) << "n=" << n;
      EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    }
  }
}

TEST(StateVector, GateMatrixAgreesWithTwoQubitEmbedding) {
  for (const Gate g : {Gate::cz(0, 1), Gate::cnot(0, 1), Gate::ry(0, 0.3)}) {
    const auto m = gate_matrix(g);
    const Dense ref = g.is_two_qubit() ? embed(g, 2) : single_qubit_matrix(g);
    const auto dim = ref.rows();
    ASSERT_EQ(m.size(), static_cast<std::size_t>(dim * dim));
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) EXPECT_NEAR(std::abs(m[r * dim + c] - ref(r, c)), 0.0, 1e-15);
    }
  }
}

TEST(StateVector, BellStateFromHadamardAndCnot) {
  Circuit c(2);
  c.add(Gate::h(0)).add(Gate::cnot(0, 1));
  const StateVector s = run_circuit(c, StateVector(2));
  const auto p = probabilities(s);
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_NEAR(p[3], 0.5, 1e-15);
  EXPECT_NEAR(p[1] + p[2], 0.0, 1e-15);
}

TEST(StateVector, ApplyGateLeavesInputUntouched) {
  const StateVector s(2);
  const StateVector t = apply_gate(s, Gate::h(1));
  EXPECT_EQ(s[0], Complex(1.0));
  EXPECT_NEAR(std::norm(t[1]), 0.5, 1e-15);
}

TEST(StateVector, RejectsBadGates) {
  StateVector s(2);
  EXPECT_THROW(s.apply(Gate::ry(2, 0.1)), InvalidGateError);
  EXPECT_THROW(s.apply(Gate::cz(1, 1)), InvalidGateError);
  EXPECT_THROW(s.apply(Gate::cnot(-1, 0)), InvalidGateError);
  Circuit c(2);
  EXPECT_THROW(c.add(Gate::h(5)), InvalidGateError);
}

TEST(StateVector, CircuitQubitMismatchThrows) {
  Circuit c(3);
  EXPECT_THROW(run_circuit(c, StateVector(2)), std::invalid_argument);
}

TEST(StateVector, FromAmplitudesNeedsPowerOfTwo) {
  EXPECT_THROW(StateVector::from_amplitudes({1.0, 0.0, 0.0}), std::invalid_argument);
  const auto s = StateVector::from_amplitudes({0.0, 1.0});
  EXPECT_EQ(s.num_qubits(), 1);
}

TEST(StateVector, CircuitCountsGateKinds) {
  Circuit c(3);
  c.add(Gate::ry(0, 0.1)).add(Gate::ry(1, 0.2)).add(Gate::cz(0, 1));
  EXPECT_EQ(c.size(), 3u);
  EXPECT_EQ(c.count(GateKind::RY), 2u);
  EXPECT_EQ(c.count(GateKind::CZ), 1u);
  EXPECT_EQ(c.count(GateKind::CNOT), 0u);
}

TEST(StateVector, NormPreservedAtTwelveQubits) {
  std::mt19937_64 rng(5);
  StateVector s(12);
  for (int k = 0; k < 200; ++k) s.apply(random_gate(rng, 12));
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-11);
}

}  // namespace
}  // namespace cvarqo
