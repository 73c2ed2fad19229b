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

#include "cvarqo/regen.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "cvarqo/flatness.hpp"
#include "cvarqo/harness.hpp"
#include "cvarqo/oracle.hpp"
#include "cvarqo/random.hpp"

namespace cvarqo {
namespace {

using json = nlohmann::json;
using Generator = std::function<json(const json& inputs)>;

json portfolio_zero_assignment(const json&) {
  const QuboProblem qubo = portfolio_qubo(portfolio_fixture());
  const std::vector<std::uint8_t> x(qubo.num_variables(), 0);
  return {{"value", qubo.evaluate(x)}};
}

json portfolio_ground_truth(const json&) {
  const QuboProblem qubo = portfolio_qubo(portfolio_fixture());
  const int n = qubo.num_variables();
  const GroundTruth truth =
      enumerate(n, [&qubo](BasisIndex j) { return qubo.evaluate_index(j); });
  json bitstrings = json::array();
  json selected = json::array();
  for (BasisIndex j : truth.minimizers) {
    bitstrings.push_back(bitstring(j, n));
    int count = 0;
    for (int q = 0; q < n; ++q) count += bit_of(j, n, q);
    selected.push_back(count);
  }
  return {{"min_value", truth.min_value},
          {"minimizers", truth.minimizers},
          {"bitstrings", bitstrings},
          {"assets_selected", selected}};
}

json maxcut_triangle_optimum(const json& inputs) {
  std::vector<WeightedEdge> edges;
  for (const auto& e : inputs.at("edges")) {
    edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
  }
  const QuboProblem qubo = maxcut_qubo(3, edges);
  const GroundTruth truth =
      enumerate(3, [&qubo](BasisIndex j) { return qubo.evaluate_index(j); });
  return {{"min_value", truth.min_value}, {"minimizer_count", truth.minimizers.size()}};
}

json two_qubit_cvar_landscape(const json& inputs) {
  const auto alphas = inputs.at("alphas").get<std::vector<double>>();
  const auto thetas = inputs.at("thetas").get<std::vector<double>>();
  const DiagonalHamiltonian h = two_qubit_hamiltonian();
  const std::vector<double> levels(h.values().begin(), h.values().end());
  json values = json::array();
  for (double alpha : alphas) {
    std::vector<double> row;
    for (double theta : thetas) {
      const auto probs = probabilities(two_qubit_state(theta));
      row.push_back(cvar_by_tail_maximization(levels, probs, alpha));
    }
    values.push_back(row);
  }
  return {{"values", values}};
}

json maxcut_flatness_Delta(const json& inputs) {
  InstanceSpec spec = inputs.at("instance").get<InstanceSpec>();
  const int p = inputs.at("p").get<int>();
  const double tolerance = inputs.at("amplitude_tolerance").get<double>();
  const IsingModel ising = qubo_to_ising(generate(spec).qubo);
  const DiagonalHamiltonian h = ising_to_hamiltonian(ising);
  Rng rng(inputs.at("angle_seed").get<std::uint64_t>());
  ParameterVector theta(2 * static_cast<std::size_t>(p));
  for (auto& t : theta) t = uniform_real(rng, -std::numbers::pi, std::numbers::pi);
  const FlatnessReport report = analyze_qaoa(AnsatzSpec::qaoa(ising, p), h, theta, tolerance);
  return {{"theta", theta},
          {"delta", report.delta},
          {"Delta_per_layer", report.Delta_per_layer},
          {"max_abs_amplitude", report.max_abs_amplitude},
          {"bound_holds", report.bound_holds}};
}

json portfolio_sampled_vqe_overlap(const json& inputs) {
  RunOptions options;
  options.algorithm = AnsatzFamily::Vqe;
  options.depth = inputs.at("depth").get<int>();
  options.entanglement = entanglement_from_string(inputs.at("entanglement").get<std::string>());
  options.cvar.alpha = inputs.at("alpha").get<double>();
  options.cvar.sampled =
      SampledMode{inputs.at("shots").get<std::size_t>(), inputs.at("seed").get<std::uint64_t>()};
  options.max_evaluations = inputs.at("max_evaluations").get<int>();
  const RunTrace trace = run_single(portfolio_qubo(portfolio_fixture()), options);
  std::vector<double> overlap, objective;
  for (const auto& r : trace.records) {
    overlap.push_back(r.overlap);
    objective.push_back(r.value);
  }
  return {{"evaluations", trace.records.size()},
          {"overlap", overlap},
          {"objective", objective},
          {"best_value", trace.best_value}};
}

const std::map<std::string, Generator>& generators() {
  static const std::map<std::string, Generator> table{
      {"portfolio_zero_assignment", portfolio_zero_assignment},
      {"portfolio_ground_truth", portfolio_ground_truth},
      {"maxcut_triangle_optimum", maxcut_triangle_optimum},
      {"two_qubit_cvar_landscape", two_qubit_cvar_landscape},
      {"maxcut_flatness_Delta", maxcut_flatness_Delta},
      {"portfolio_sampled_vqe_overlap", portfolio_sampled_vqe_overlap},
  };
  return table;
}

void diff_json(const json& a, const json& b, double tolerance, const std::string& where,
               std::vector<std::string>& out) {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>();
    const double y = b.get<double>();
    if (!(std::abs(x - y) <= tolerance) && !(x == y)) {
      out.push_back(where + ": " + a.dump() + " != " + b.dump());
    }
    return;
  }
  if (a.type() != b.type()) {
    out.push_back(where + ": type differs");
    return;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) {
      out.push_back(where + ": length " + std::to_string(a.size()) + " != " +
                    std::to_string(b.size()));
      return;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      diff_json(a[i], b[i], tolerance, where + "[" + std::to_string(i) + "]", out);
    }
  } else if (a.is_object()) {
    for (const auto& [key, value] : a.items()) {
      if (!b.contains(key)) {
        out.push_back(where + "." + key + ": missing");
      } else {
        diff_json(value, b.at(key), tolerance, where + "." + key, out);
      }
    }
    for (const auto& [key, value] : b.items()) {
      if (!a.contains(key)) out.push_back(where + "." + key + ": unexpected");
    }
  } else if (a != b) {
    out.push_back(where + ": " + a.dump() + " != " + b.dump());
  }
}

}  // namespace

GoldenSuite regenerate_golden_suite(const GoldenSuite& current) {
  GoldenSuite fresh = current;
  for (auto& c : fresh.cases) {
    if (c.provenance != Provenance::Derived) continue;
    const auto it = generators().find(c.name);
    if (it == generators().end()) {
      throw FixtureError("no generator for DERIVED case '" + c.name + "'");
    }
    c.expected = it->second(c.inputs);
  }
  return fresh;
}

std::vector<std::string> diff_golden_suites(const GoldenSuite& frozen, const GoldenSuite& fresh) {
  std::vector<std::string> out;
  if (frozen.cases.size() != fresh.cases.size()) {
    out.push_back("case count " + std::to_string(frozen.cases.size()) + " != " +
                  std::to_string(fresh.cases.size()));
  }
  for (const auto& c : frozen.cases) {
    const GoldenCase* other = nullptr;
    for (const auto& f : fresh.cases) {
      if (f.name == c.name) other = &f;
    }
    if (other == nullptr) {
      out.push_back(c.name + ": missing from regenerated suite");
      continue;
    }
    diff_json(c.inputs, other->inputs, 0.0, c.name + ".inputs", out);
    diff_json(c.expected, other->expected, c.tolerance, c.name + ".expected", out);
  }
  return out;
}

}  // namespace cvarqo
