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

// Derivative-free minimization for the classical outer loop.
//
// The method follows Powell's COBYLA without constraints: it keeps a simplex
// of dim + 1 interpolation points, fits the linear model through them, steps
// to the trust-region boundary along the model's steepest descent, and
// halves the trust-region radius from initial_step down to final_step when
// steps stop paying off. Geometry-improving steps keep the simplex well
// conditioned. Everything is deterministic.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cvarqo/ansatz.hpp"
#include "cvarqo/statevector.hpp"

namespace cvarqo {

class OptimizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptimizerConfig {
  int max_evaluations = 1000;
  ParameterVector initial_point;
  double initial_step = 0.5;
  double final_step = 1e-4;
  /// Not consumed by the deterministic core; carried for run metadata.
  std::optional<std::uint64_t> seed;

  void validate() const;
};

/// Objective value plus optional diagnostics the caller wants recorded.
struct Evaluation {
  Evaluation(double v = 0.0) : value(v) {}  // NOLINT: implicit from a plain value

  double value;
  double overlap = std::numeric_limits<double>::quiet_NaN();
  std::optional<BasisIndex> best_bitstring;
  double best_bitstring_value = std::numeric_limits<double>::quiet_NaN();
};

struct EvaluationRecord {
  std::size_t index = 0;  // 1-based evaluation count
  ParameterVector point;
  double value = 0.0;
  double overlap = std::numeric_limits<double>::quiet_NaN();
  std::optional<BasisIndex> best_bitstring;
  double best_bitstring_value = std::numeric_limits<double>::quiet_NaN();
};

enum class Termination { Converged, BudgetExhausted };

struct RunTrace {
  std::vector<EvaluationRecord> records;
  double best_value = std::numeric_limits<double>::infinity();
  ParameterVector best_point;
  /// The optimizer's incumbent when it stopped. Equals best_point unless two
  /// values tie to within rounding noise.
  ParameterVector final_point;
  Termination termination = Termination::Converged;
  double final_step = 0.0;
};

using Objective = std::function<Evaluation(std::span<const double>)>;
using Observer = std::function<void(const EvaluationRecord&)>;

/// Throws OptimizationError on a non-finite objective value and
/// std::invalid_argument on an invalid configuration.
RunTrace minimize(const Objective& objective, const OptimizerConfig& config,
                  const Observer& observer = {});

/// Lowest-valued bitstring recorded across all evaluations. Throws
/// std::invalid_argument when the trace is empty or carries no bitstrings.
std::pair<BasisIndex, double> best_observed_solution(const RunTrace& trace);

}  // namespace cvarqo
