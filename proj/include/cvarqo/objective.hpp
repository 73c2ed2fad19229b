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

// CVaR objectives over the outcome distribution a trial state induces on a
// diagonal Hamiltonian.
//
// Exact mode integrates the lower alpha-tail of the distribution and splits
// the boundary level fractionally, so the result is continuous in alpha.
// Sampled mode draws K basis states and averages the ceil(alpha K) smallest
// observed energies. Its standard error grows roughly like 1/alpha for a
// fixed K, so small alpha needs proportionally more shots for the same
// accuracy.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cvarqo/hamiltonian.hpp"
#include "cvarqo/random.hpp"
#include "cvarqo/statevector.hpp"

namespace cvarqo {

struct Outcome {
  double value = 0.0;
  double probability = 0.0;
};

/// Sorted ascending by value, equal values merged, probabilities summing to 1.
class OutcomeDistribution {
 public:
  /// Sorts and merges; throws on negative or non-finite input, or when the
  /// total probability is off by more than 1e-10.
  static OutcomeDistribution from_outcomes(std::vector<Outcome> outcomes);

  std::span<const Outcome> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double mean() const;
  double min_value() const { return entries_.front().value; }

 private:
  std::vector<Outcome> entries_;
};

struct SampledMode {
  std::size_t shots = 8192;
  std::uint64_t seed = 0;
};

struct CvarConfig {
  double alpha = 1.0;
  std::optional<SampledMode> sampled;  // nullopt: exact mode

  void validate() const;
};

/// Throws std::invalid_argument unless 0 < alpha <= 1.
void validate_alpha(double alpha);

OutcomeDistribution outcome_distribution(const StateVector& state, const DiagonalHamiltonian& h);

double cvar_exact(const OutcomeDistribution& distribution, double alpha);

/// ceil(alpha K), clamped to [1, K]. A 1e-9 slack keeps products such as
/// 0.1 * 10 from rounding up past the intended count.
std::size_t tail_count(double alpha, std::size_t shots);

/// Mean of the tail_count(alpha, K) smallest values; K = values.size() >= 1.
double cvar_of_samples(std::vector<double> values, double alpha);

/// Draws basis indices from |amplitude|^2 by inverse CDF over a cumulative
/// table. Owns its RNG stream; repeated calls continue the stream.
class OutcomeSampler {
 public:
  explicit OutcomeSampler(std::uint64_t seed) : rng_(seed) {}

  std::vector<BasisIndex> sample(const StateVector& state, std::size_t shots);

 private:
  Rng rng_;
};

double cvar_sampled(const StateVector& state, const DiagonalHamiltonian& h,
                    const CvarConfig& config);

/// Probability mass on every basis state attaining the minimum eigenvalue.
double overlap_with_optimum(const StateVector& state, const DiagonalHamiltonian& h);

}  // namespace cvarqo
