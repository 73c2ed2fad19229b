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

// Recomputes the DERIVED golden cases from their recorded inputs and diffs
// them against the frozen copy.

#include <string>
#include <vector>

#include "cvarqo/fixtures.hpp"

namespace cvarqo {

/// Copy of `current` with every DERIVED case's expected block recomputed.
/// Throws FixtureError for a DERIVED case without a known generator.
GoldenSuite regenerate_golden_suite(const GoldenSuite& current);

/// Human-readable differences between the frozen and the regenerated suite,
/// numbers compared within each case's tolerance. Empty means identical.
std::vector<std::string> diff_golden_suites(const GoldenSuite& frozen, const GoldenSuite& fresh);

}  // namespace cvarqo
