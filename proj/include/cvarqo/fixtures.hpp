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

// Golden data shared by tests and tools: the two-qubit counterexample
// circuit and Hamiltonian, the six-asset portfolio instance and the frozen
// regression values recomputed by `cvarqo oracle --regen`.
//
// Each case carries a provenance tag. PAPER cases are transcribed from the
// source publication, TRIVIAL cases follow from the definitions and
// DERIVED cases are produced by the exhaustive oracle and checked in.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cvarqo/hamiltonian.hpp"
#include "cvarqo/problems.hpp"
#include "cvarqo/statevector.hpp"

namespace cvarqo {

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Provenance { Paper, Trivial, Derived };

std::string to_string(Provenance provenance);
Provenance provenance_from_string(const std::string& tag);

struct GoldenCase {
  std::string name;
  Provenance provenance = Provenance::Trivial;
  double tolerance = 0.0;
  /// Where the value comes from; for DERIVED cases, the oracle computation.
  std::string source;
  nlohmann::json inputs;
  nlohmann::json expected;
};

struct GoldenSuite {
  int version = 1;
  std::vector<GoldenCase> cases;

  /// Throws FixtureError when absent.
  const GoldenCase& find(std::string_view name) const;
  GoldenCase& find(std::string_view name);
};

/// The suite compiled into the library from data/golden_suite.json.
const GoldenSuite& load_golden_suite();
GoldenSuite load_golden_suite(const std::filesystem::path& path);
/// Throws FixtureError on malformed JSON or a malformed case.
GoldenSuite parse_golden_suite(std::string_view text);
nlohmann::json to_json(const GoldenSuite& suite);
/// Pretty-printed JSON with a trailing newline, as stored in the repository.
std::string serialize_golden_suite(const GoldenSuite& suite);

/// H on qubit 0, CNOT 0 -> 1, RY(theta) on qubit 1.
Circuit two_qubit_circuit(double theta);
StateVector two_qubit_state(double theta);
/// diag(0, 1, 1, 2).
DiagonalHamiltonian two_qubit_hamiltonian();

/// The six-asset instance; validates symmetry and positive semidefiniteness
/// of sigma (smallest eigenvalue >= -1e-8).
PortfolioInstance portfolio_fixture();
void validate_portfolio(const PortfolioInstance& instance, double psd_tolerance = 1e-8);

}  // namespace cvarqo
