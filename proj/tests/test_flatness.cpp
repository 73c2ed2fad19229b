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

#include "cvarqo/flatness.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cvarqo/fixtures.hpp"
#include "cvarqo/problems.hpp"

namespace cvarqo {
namespace {

ParameterVector random_angles(std::size_t d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(-std::numbers::pi, std::numbers::pi);
  ParameterVector t(d);
  for (auto& x : t) x = a(rng);
  return t;
}

IsingModel maxcut_ising(int n, std::uint64_t seed) {
  InstanceSpec spec;
  spec.num_qubits = n;
  spec.seed = seed;
  return qubo_to_ising(generate(spec).qubo);
}

TEST(Flatness, DeltaExamples) {
  EXPECT_DOUBLE_EQ(compute_delta(two_qubit_hamiltonian()), 0.5);
  for (int n : {3, 8}) {
    const double dim = std::ldexp(1.0, n);
    EXPECT_DOUBLE_EQ(compute_delta(needle_hamiltonian(n, 2)), (dim - 1) / dim);
  }
  std::vector<double> distinct(16);
  for (int j = 0; j < 16; ++j) distinct[j] = j * 0.5;
  EXPECT_DOUBLE_EQ(compute_delta(DiagonalHamiltonian::from_diagonal(distinct)), 1.0 / 16);
}

TEST(Flatness, UniformStartHasDeltaOne) {
  const auto snaps = diagonal_qaoa_snapshots(needle_hamiltonian(5, 0), ParameterVector{});
  ASSERT_EQ(snaps.size(), 1u);
  EXPECT_EQ(compute_Delta(snaps), std::vector<double>{1.0});
}

TEST(Flatness, ZeroAnglesKeepEverythingEqual) {
  const auto ising = maxcut_ising(6, 1);
  const auto spec = AnsatzSpec::qaoa(ising, 3);
  const auto Delta = compute_Delta(qaoa_layer_snapshots(spec, ParameterVector(6, 0.0)));
  EXPECT_EQ(Delta, std::vector<double>(4, 1.0));
}

TEST(Flatness, DepthZeroBoundIsAttained) {
  const auto r = analyze_diagonal_qaoa(needle_hamiltonian(6, 1), ParameterVector{});
  EXPECT_DOUBLE_EQ(r.bound_value, 1.0 / 8.0);
  EXPECT_NEAR(r.max_abs_amplitude, 1.0 / 8.0, 1e-15);
  EXPECT_TRUE(r.bound_holds);
  EXPECT_FALSE(r.log_Delta_lower_bound.has_value());
}

TEST(Flatness, ConstantHamiltonianNothingMixes) {
  const DiagonalHamiltonian flat(5, std::vector<double>(32, 3.0));
  for (int p = 1; p <= 3; ++p) {
    const auto r = analyze_diagonal_qaoa(flat, ParameterVector(2 * p, 0.0));
    EXPECT_DOUBLE_EQ(r.delta, 1.0);
    EXPECT_DOUBLE_EQ(r.bound_value, 1.0 / std::sqrt(32.0));
    EXPECT_NEAR(r.max_abs_amplitude, 1.0 / std::sqrt(32.0), 1e-15);
    EXPECT_TRUE(r.bound_holds);
  }
}

TEST(Flatness, NeedleBoundHoldsAtEightQubits) {
  std::mt19937_64 rng(12);
  for (int draw = 0; draw < 20; ++draw) {
    const auto r = analyze_diagonal_qaoa(needle_hamiltonian(8, 200), random_angles(2, rng));
    EXPECT_TRUE(r.bound_holds);
  }
}

TEST(Flatness, BoundHoldsAcrossTheTestGrid) {
  std::mt19937_64 rng(13);
  for (int n : {4, 6, 8, 10}) {
    const auto ising = maxcut_ising(n, static_cast<std::uint64_t>(n));
    const auto h = ising_to_hamiltonian(ising);
    for (int p = 1; p <= 3; ++p) {
      const auto spec = AnsatzSpec::qaoa(ising, p);
      for (int draw = 0; draw < 50; ++draw) {
        const auto r = analyze_qaoa(spec, h, random_angles(2 * p, rng));
        ASSERT_TRUE(r.bound_holds) << "n=" << n << " p=" << p;
        for (std::size_t t = 1; t < r.Delta_per_layer.size(); ++t) {
          ASSERT_LE(r.Delta_per_layer[t], r.Delta_per_layer[t - 1]);
        }
        ASSERT_TRUE(r.lower_bound_holds.value());
      }
    }
  }
}

TEST(Flatness, DiagonalEvolutionMatchesCompiledCircuit) {
  std::mt19937_64 rng(14);
  const auto ising = maxcut_ising(6, 3);
  const auto h = ising_to_hamiltonian(ising);
  const auto theta = random_angles(4, rng);
  const auto compiled = qaoa_layer_snapshots(AnsatzSpec::qaoa(ising, 2), theta).back();
  const auto direct = diagonal_qaoa_snapshots(h, theta).back();
  // The Hamiltonian includes the constant offset, a global phase per layer.
  const Complex phase = direct[0] / compiled[0];
  for (std::size_t j = 0; j < compiled.dimension(); ++j) {
    EXPECT_NEAR(std::abs(direct[j] - phase * compiled[j]), 0.0, 1e-12);
  }
}

TEST(Flatness, ClusteringMergesFloatingPointTwins) {
  std::vector<Complex> a{{0.5, 0.0}, {0.5 + 1e-13, 1e-13}, {0.5, 0.0}, {-0.5, 0.0}};
  const auto s = StateVector::from_amplitudes(a);
  EXPECT_DOUBLE_EQ(largest_amplitude_cluster(s), 0.75);
  EXPECT_DOUBLE_EQ(largest_amplitude_cluster(s, 0.0), 0.5);
  // Same real part, different imaginary parts.
  const auto t = StateVector::from_amplitudes({{0.5, 0.1}, {0.5, -0.1}, {0.5, 0.1}, {0.5, 0.3}});
  EXPECT_DOUBLE_EQ(largest_amplitude_cluster(t), 0.5);
}

TEST(Flatness, UnstructuredFlag) {
  const std::vector<double> Delta{1.0, 1.0 / 16};
  const auto r = check_bound(4, 1, 1.0 / 16, Delta, 0.3);
  EXPECT_TRUE(r.unstructured);
  EXPECT_FALSE(check_bound(4, 1, 1.0 / 16, std::vector<double>{1.0, 0.25}, 0.3).unstructured);
}

TEST(Flatness, RejectsMismatchedInputs) {
  EXPECT_THROW(check_bound(4, 2, 0.5, std::vector<double>{1.0}, 0.1), std::invalid_argument);
  EXPECT_THROW(compute_Delta(std::vector<StateVector>{}), std::invalid_argument);
  EXPECT_THROW(diagonal_qaoa_snapshots(needle_hamiltonian(3, 0), ParameterVector(3, 0.0)),
               std::invalid_argument);
  EXPECT_THROW(needle_hamiltonian(3, 8), std::out_of_range);
}

TEST(Flatness, DecayFitRecoversExponent) {
  const std::vector<int> ns{8, 10, 12};
  std::vector<double> m;
  for (int n : ns) m.push_back(std::exp2(1.5 - 0.25 * n));
  const DecayFit fit = fit_amplitude_decay(ns, m);
  EXPECT_NEAR(fit.epsilon, 0.25, 1e-12);
  EXPECT_NEAR(fit.intercept, 1.5, 1e-12);
  EXPECT_NEAR(fit.predict(12), m[2], 1e-15);
}

TEST(Flatness, MaxCutRegressionValues) {
  const auto& c = load_golden_suite().find("maxcut_flatness_Delta");
  const InstanceSpec spec = c.inputs.at("instance").get<InstanceSpec>();
  const IsingModel ising = qubo_to_ising(generate(spec).qubo);
  const int p = c.inputs.at("p").get<int>();
  const auto theta = c.expected.at("theta").get<ParameterVector>();
  const auto r = analyze_qaoa(AnsatzSpec::qaoa(ising, p), ising_to_hamiltonian(ising), theta);
  const auto expected = c.expected.at("Delta_per_layer").get<std::vector<double>>();
  ASSERT_EQ(r.Delta_per_layer.size(), expected.size());
  for (std::size_t t = 0; t < expected.size(); ++t) {
    EXPECT_NEAR(r.Delta_per_layer[t], expected[t], c.tolerance);
    EXPECT_GE(r.Delta_per_layer[t], 1.0 / 64);
    EXPECT_LE(r.Delta_per_layer[t], 1.0);
  }
}

TEST(Flatness, ReportJson) {
  const auto r = analyze_diagonal_qaoa(needle_hamiltonian(4, 3), ParameterVector{0.3, 0.7});
  const nlohmann::json j = r;
  EXPECT_EQ(j.at("n"), 4);
  EXPECT_EQ(j.at("p"), 1);
  EXPECT_EQ(j.at("Delta_per_layer").size(), 2u);
  EXPECT_TRUE(j.at("bound_holds").get<bool>());
  EXPECT_EQ(j.at("amplitude_tolerance"), 1e-9);
}

}  // namespace
}  // namespace cvarqo
