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

#include "cvarqo/objective.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cvarqo {
namespace {

void require_matching(const StateVector& state, const DiagonalHamiltonian& h) {
  if (state.num_qubits() != h.num_qubits()) {
    throw std::invalid_argument("state has " + std::to_string(state.num_qubits()) +
                                " qubits but the Hamiltonian has " +
                                std::to_string(h.num_qubits()));
  }
}

}  // namespace

OutcomeDistribution OutcomeDistribution::from_outcomes(std::vector<Outcome> outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("empty outcome distribution");
  double total = 0.0;
  for (const auto& o : outcomes) {
    if (!std::isfinite(o.value) || !std::isfinite(o.probability) || o.probability < 0.0) {
      throw std::invalid_argument("outcome values must be finite with probability >= 0");
    }
    total += o.probability;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("outcome probabilities sum to " + std::to_string(total));
  }
  std::stable_sort(outcomes.begin(), outcomes.end(),
                   [](const Outcome& a, const Outcome& b) { return a.value < b.value; });
  OutcomeDistribution d;
  for (const auto& o : outcomes) {
    if (!d.entries_.empty() && d.entries_.back().value == o.value) {
      d.entries_.back().probability += o.probability;
    } else {
      d.entries_.push_back(o);
    }
  }
  return d;
}

double OutcomeDistribution::mean() const {
  double m = 0.0;
  for (const auto& e : entries_) m += e.value * e.probability;
  return m;
}

void validate_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
}

void CvarConfig::validate() const {
  validate_alpha(alpha);
  if (sampled && sampled->shots < 1) throw std::invalid_argument("shot count must be >= 1");
}

OutcomeDistribution outcome_distribution(const StateVector& state, const DiagonalHamiltonian& h) {
  require_matching(state, h);
  std::vector<Outcome> outcomes(state.dimension());
  for (BasisIndex j = 0; j < state.dimension(); ++j) {
    outcomes[j] = {h[j], std::norm(state[j])};
  }
  return OutcomeDistribution::from_outcomes(std::move(outcomes));
}

double cvar_exact(const OutcomeDistribution& distribution, double alpha) {
  validate_alpha(alpha);
  const auto entries = distribution.entries();
  // Levels with zero probability carry no mass; the tail starts at the
  // lowest level that occurs.
  const auto first = std::find_if(entries.begin(), entries.end(),
                                  [](const Outcome& e) { return e.probability > 0.0; });
  if (first != entries.end() && alpha <= first->probability) return first->value;

  double remaining = alpha;
  double tail = 0.0;
  for (const auto& e : entries) {
    const double take = std::min(e.probability, remaining);
    tail += e.value * take;
    remaining -= take;
    if (remaining <= 0.0) break;
  }
  return tail / alpha;
}

std::size_t tail_count(double alpha, std::size_t shots) {
  validate_alpha(alpha);
  if (shots < 1) throw std::invalid_argument("shot count must be >= 1");
  const double raw = std::ceil(alpha * static_cast<double>(shots) - 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 1.0)), 1, shots);
}

double cvar_of_samples(std::vector<double> values, double alpha) {
  if (values.empty()) throw std::invalid_argument("no samples");
  const std::size_t keep = tail_count(alpha, values.size());
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(keep - 1),
                   values.end());
  std::sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(keep));
  double sum = 0.0;
  for (std::size_t k = 0; k < keep; ++k) sum += values[k];
  return sum / static_cast<double>(keep);
}

std::vector<BasisIndex> OutcomeSampler::sample(const StateVector& state, std::size_t shots) {
  if (shots < 1) throw std::invalid_argument("shot count must be >= 1");
  std::vector<double> cumulative(state.dimension());
  double running = 0.0;
  for (BasisIndex j = 0; j < state.dimension(); ++j) {
    running += std::norm(state[j]);
    cumulative[j] = running;
  }
  BasisIndex last_supported = 0;
  for (BasisIndex j = 0; j < state.dimension(); ++j) {
    if (std::norm(state[j]) > 0.0) last_supported = j;
  }
  std::vector<BasisIndex> draws(shots);
  for (auto& draw : draws) {
    const double u = uniform_unit(rng_) * running;
    // upper_bound never lands on a zero-probability entry: its cumulative
    // value equals its predecessor's, which is already > u.
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    draw = it == cumulative.end() ? last_supported : static_cast<BasisIndex>(it - cumulative.begin());
  }
  return draws;
}

double cvar_sampled(const StateVector& state, const DiagonalHamiltonian& h,
                    const CvarConfig& config) {
  config.validate();
  if (!config.sampled) throw std::invalid_argument("cvar_sampled requires sampled mode");
  require_matching(state, h);
  OutcomeSampler sampler(config.sampled->seed);
  const auto draws = sampler.sample(state, config.sampled->shots);
  std::vector<double> values(draws.size());
  std::transform(draws.begin(), draws.end(), values.begin(),
                 [&h](BasisIndex j) { return h[j]; });
  return cvar_of_samples(std::move(values), config.alpha);
}

double overlap_with_optimum(const StateVector& state, const DiagonalHamiltonian& h) {
  require_matching(state, h);
  const double ground = h.ground_value();
  double mass = 0.0;
  for (BasisIndex j = 0; j < state.dimension(); ++j) {
    if (same_energy(h[j], ground)) mass += std::norm(state[j]);
  }
  return std::min(mass, 1.0);
}

}  // namespace cvarqo
