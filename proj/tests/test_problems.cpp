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

#include "cvarqo/problems.hpp"

#include <chrono>
#include <cmath>

#include <gtest/gtest.h>

#include "cvarqo/fixtures.hpp"
#include "cvarqo/oracle.hpp"

namespace cvarqo {
namespace {

std::vector<std::uint8_t> bits_of(BasisIndex j, int n) {
  std::vector<std::uint8_t> x(n);
  for (int i = 0; i < n; ++i) x[i] = bit_of(j, n, i);
  return x;
}

GeneratedInstance make(ProblemClass problem, int n, std::uint64_t seed) {
  InstanceSpec spec;
  spec.problem = problem;
  spec.num_qubits = n;
  spec.seed = seed;
  return generate(spec);
}

TEST(Problems, TriangleMaxCutOptimum) {
  const std::vector<WeightedEdge> edges{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
  const QuboProblem q = maxcut_qubo(3, edges);
  const auto truth = enumerate(3, [&q](BasisIndex j) { return q.evaluate_index(j); });
  EXPECT_EQ(truth.min_value, -2.0);
  EXPECT_EQ(truth.minimizers.size(), 6u);
}

TEST(Problems, GeneratedMaxCutValueIsNegativeCutWeight) {
  const auto inst = make(ProblemClass::MaxCut, 7, 3);
  const int n = 7;
  for (BasisIndex j = 0; j < (BasisIndex{1} << n); ++j) {
    const auto x = bits_of(j, n);
    double cut = 0.0;
    for (const auto& e : inst.details.at("edges")) {
      if (x[e.at(0).get<int>()] != x[e.at(1).get<int>()]) cut += e.at(2).get<double>();
    }
    EXPECT_EQ(inst.qubo.evaluate(x), -cut);
  }
}

TEST(Problems, PartitionSmallSet) {
  const std::vector<double> numbers{1, 1, 2};
  const QuboProblem q = partition_qubo(numbers);
  const auto truth = enumerate(3, [&q](BasisIndex j) { return q.evaluate_index(j); });
  EXPECT_EQ(truth.min_value, 0.0);
}

TEST(Problems, GeneratedPartitionIsSquaredImbalance) {
  const auto inst = make(ProblemClass::Partition, 8, 5);
  const auto a = inst.details.at("numbers").get<std::vector<double>>();
  for (BasisIndex j = 0; j < 256; ++j) {
    const auto x = bits_of(j, 8);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += a[i] * (1 - 2 * x[i]);
    EXPECT_EQ(inst.qubo.evaluate(x), s * s);
  }
}

TEST(Problems, SingleClausePenalizesOneAssignment) {
  Max3SatFormula f;
  f.num_variables = 3;
  f.clauses.push_back({{0, 1, 2}, {false, true, false}});
  const QuboProblem q = max3sat_qubo(f);
  ASSERT_EQ(q.num_variables(), 4);
  int penalized = 0;
  for (BasisIndex v = 0; v < 8; ++v) {
    double best = INFINITY;
    for (int w = 0; w < 2; ++w) best = std::min(best, q.evaluate_index(v * 2 + w));
    EXPECT_GE(best, 0.0);
    penalized += best > 0.5;
  }
  EXPECT_EQ(penalized, 1);
}

TEST(Problems, Max3SatMinimumOverAncillasCountsUnsatisfiedClauses) {
  for (int n : {6, 9, 12}) {
    for (std::uint64_t seed : {1u, 2u}) {
      const auto inst = make(ProblemClass::Max3Sat, n, seed);
      Max3SatFormula f;
      f.num_variables = inst.details.at("num_variables").get<int>();
      for (const auto& c : inst.details.at("clauses")) {
        f.clauses.push_back({c.at("variables").get<std::array<int, 3>>(),
                             c.at("negated").get<std::array<bool, 3>>()});
      }
      ASSERT_EQ(f.num_qubits(), n);
      const int v = f.num_variables;
      const int m = n - v;
      for (BasisIndex xv = 0; xv < (BasisIndex{1} << v); ++xv) {
        double best = INFINITY;
        for (BasisIndex w = 0; w < (BasisIndex{1} << m); ++w) {
          best = std::min(best, inst.qubo.evaluate_index((xv << m) | w));
        }
        EXPECT_EQ(best, f.count_unsatisfied(bits_of(xv, v))) << "n=" << n;
      }
    }
  }
}

TEST(Problems, MarketSplitIsSumOfSquaredSlacks) {
  const auto inst = make(ProblemClass::MarketSplit, 8, 9);
  const auto rows = inst.details.at("coefficients").get<std::vector<std::vector<double>>>();
  const auto d = inst.details.at("targets").get<std::vector<double>>();
  ASSERT_EQ(rows.size(), 2u);
  for (BasisIndex j = 0; j < 256; ++j) {
    const auto x = bits_of(j, 8);
    double total = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      double s = -d[r];
      for (int k = 0; k < 8; ++k) s += rows[r][k] * x[k];
      total += s * s;
    }
    EXPECT_EQ(inst.qubo.evaluate(x), total);
  }
}

TEST(Problems, StableSetOptimaAreStableSets) {
  for (int n : {6, 9, 12}) {
    const auto inst = make(ProblemClass::StableSet, n, 4);
    const auto truth = enumerate(n, [&](BasisIndex j) { return inst.qubo.evaluate_index(j); });
    for (BasisIndex j : truth.minimizers) {
      const auto x = bits_of(j, n);
      for (const auto& e : inst.details.at("edges")) {
        EXPECT_FALSE(x[e.at(0).get<int>()] && x[e.at(1).get<int>()]) << "n=" << n;
      }
    }
  }
}

TEST(Problems, PortfolioFixtureValues) {
  const PortfolioInstance p = portfolio_fixture();
  const QuboProblem q = portfolio_qubo(p);
  EXPECT_NEAR(q.evaluate_index(0), 108.0, 1e-12);
  for (BasisIndex j = 0; j < 64; ++j) {
    const auto x = bits_of(j, 6);
    int count = 0;
    for (auto b : x) count += b;
    if (count != 3) continue;
    double value = 0.0;
    for (int i = 0; i < 6; ++i) {
      value -= p.mu[i] * x[i];
      for (int k = 0; k < 6; ++k) value += p.risk_factor * p.sigma(i, k) * x[i] * x[k];
    }
    EXPECT_NEAR(q.evaluate(x), value, 1e-12);
  }
}

TEST(Problems, GeneratedPortfolioIsPositiveSemidefinite) {
  const auto inst = make(ProblemClass::Portfolio, 10, 2);
  const PortfolioInstance p = inst.details.get<PortfolioInstance>();
  EXPECT_NO_THROW(validate_portfolio(p));
  EXPECT_EQ(p.budget, 5);
  EXPECT_NEAR(inst.qubo.evaluate_index(0), 12.0 * 25.0, 1e-12);
}

TEST(Problems, GenerationIsDeterministic) {
  for (auto problem : all_problem_classes()) {
    const auto a = make(problem, 9, 77);
    const auto b = make(problem, 9, 77);
    const auto c = make(problem, 9, 78);
    EXPECT_EQ(a.qubo.b, b.qubo.b) << to_string(problem);
    EXPECT_EQ(a.qubo.A, b.qubo.A) << to_string(problem);
    EXPECT_EQ(a.qubo.offset, b.qubo.offset);
    EXPECT_FALSE(a.qubo.A == c.qubo.A && a.qubo.b == c.qubo.b) << to_string(problem);
  }
}

TEST(Problems, RejectsInvalidSpecs) {
  EXPECT_THROW(make(ProblemClass::Max3Sat, 8, 0), std::invalid_argument);
  EXPECT_THROW(make(ProblemClass::MaxCut, 0, 0), std::invalid_argument);
  EXPECT_THROW(make(ProblemClass::MaxCut, 21, 0), std::invalid_argument);
  EXPECT_THROW(problem_from_string("tsp"), std::invalid_argument);
}

TEST(Problems, NamesRoundTrip) {
  for (auto problem : all_problem_classes()) {
    EXPECT_EQ(problem_from_string(to_string(problem)), problem);
  }
  EXPECT_EQ(all_problem_classes().size(), 6u);
}

TEST(Problems, InstanceSpecJsonRoundTrip) {
  InstanceSpec spec;
  spec.problem = ProblemClass::Partition;
  spec.num_qubits = 10;
  spec.seed = 123456789012345ULL;
  spec.partition_max = 50;
  const InstanceSpec back = nlohmann::json(spec).get<InstanceSpec>();
  EXPECT_EQ(back.problem, spec.problem);
  EXPECT_EQ(back.seed, spec.seed);
  EXPECT_EQ(back.partition_max, 50);
}

TEST(Problems, SixteenQubitOptimumIsFast) {
  for (auto problem : {ProblemClass::MaxCut, ProblemClass::Portfolio, ProblemClass::MarketSplit}) {
    const auto inst = make(problem, 16, 1);
    const auto start = std::chrono::steady_clock::now();
    const auto truth = enumerate(16, [&](BasisIndex j) { return inst.qubo.evaluate_index(j); });
    const auto elapsed = std::chrono::steady_clock::now() - start;
    EXPECT_FALSE(truth.minimizers.empty());
    EXPECT_LT(std::chrono::duration<double>(elapsed).count(), 10.0);
  }
}

}  // namespace
}  // namespace cvarqo
