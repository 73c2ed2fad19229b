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

#include "cvarqo/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

#include "golden_suite_data.hpp"

namespace cvarqo {

std::string to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::Paper: return "PAPER";
    case Provenance::Trivial: return "TRIVIAL";
    case Provenance::Derived: return "DERIVED";
  }
  return "?";
}

Provenance provenance_from_string(const std::string& tag) {
  if (tag == "PAPER") return Provenance::Paper;
  if (tag == "TRIVIAL") return Provenance::Trivial;
  if (tag == "DERIVED") return Provenance::Derived;
  throw FixtureError("unknown provenance tag '" + tag + "'");
}

const GoldenCase& GoldenSuite::find(std::string_view name) const {
  for (const auto& c : cases) {
    if (c.name == name) return c;
  }
  throw FixtureError("no golden case named '" + std::string(name) + "'");
}

GoldenCase& GoldenSuite::find(std::string_view name) {
  return const_cast<GoldenCase&>(std::as_const(*this).find(name));
}

GoldenSuite parse_golden_suite(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FixtureError(std::string("golden suite is not valid JSON: ") + e.what());
  }
  GoldenSuite suite;
  try {
    suite.version = doc.at("version").get<int>();
    for (const auto& c : doc.at("cases")) {
      GoldenCase gc;
      gc.name = c.at("name").get<std::string>();
      gc.provenance = provenance_from_string(c.at("provenance").get<std::string>());
      gc.tolerance = c.at("tolerance").get<double>();
      gc.source = c.contains("oracle") ? c.at("oracle").get<std::string>()
                                       : c.value("source", std::string{});
      gc.inputs = c.at("inputs");
      gc.expected = c.at("expected");
      if (gc.name.empty() || !(gc.tolerance >= 0.0)) {
        throw FixtureError("golden case with empty name or negative tolerance");
      }
      for (const auto& existing : suite.cases) {
        if (existing.name == gc.name) throw FixtureError("duplicate golden case '" + gc.name + "'");
      }
      suite.cases.push_back(std::move(gc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FixtureError(std::string("malformed golden suite: ") + e.what());
  }
  return suite;
}

const GoldenSuite& load_golden_suite() {
  static const GoldenSuite suite = parse_golden_suite(detail::kEmbeddedGoldenSuite);
  return suite;
}

GoldenSuite load_golden_suite(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open golden suite " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_golden_suite(text.str());
}

nlohmann::json to_json(const GoldenSuite& suite) {
  auto cases = nlohmann::json::array();
  for (const auto& c : suite.cases) {
    nlohmann::json j{{"name", c.name},
                     {"provenance", to_string(c.provenance)},
                     {"tolerance", c.tolerance}};
    j[c.provenance == Provenance::Derived ? "oracle" : "source"] = c.source;
    j["inputs"] = c.inputs;
    j["expected"] = c.expected;
    cases.push_back(std::move(j));
  }
  return nlohmann::json{{"version", suite.version}, {"cases", std::move(cases)}};
}

std::string serialize_golden_suite(const GoldenSuite& suite) {
  return to_json(suite).dump(2) + "\n";
}

Circuit two_qubit_circuit(double theta) {
  Circuit c(2);
  c.add(Gate::h(0));
  c.add(Gate::cnot(0, 1));
  c.add(Gate::ry(1, theta));
  return c;
}

StateVector two_qubit_state(double theta) { return run_circuit(two_qubit_circuit(theta), StateVector(2)); }

DiagonalHamiltonian two_qubit_hamiltonian() {
  const auto& c = load_golden_suite().find("two_qubit_hamiltonian");
  return DiagonalHamiltonian::from_diagonal(c.expected.at("diagonal").get<std::vector<double>>());
}

void validate_portfolio(const PortfolioInstance& p, double psd_tolerance) {
  const auto n = p.mu.size();
  if (n < 1 || p.sigma.rows() != n || p.sigma.cols() != n) {
    throw std::invalid_argument("portfolio: mu and sigma dimensions disagree");
  }
  if (p.sigma != p.sigma.transpose()) {
    throw std::invalid_argument("portfolio: sigma is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(p.sigma, Eigen::EigenvaluesOnly);
  const double smallest = solver.eigenvalues().minCoeff();
  if (smallest < -psd_tolerance) {
    throw std::invalid_argument("portfolio: sigma has eigenvalue " + std::to_string(smallest) +
                                " below -" + std::to_string(psd_tolerance));
  }
  if (p.budget < 0 || p.budget > n) throw std::invalid_argument("portfolio: budget out of range");
}

PortfolioInstance portfolio_fixture() {
  const auto& c = load_golden_suite().find("portfolio_constants");
  PortfolioInstance p = c.expected.get<PortfolioInstance>();
  validate_portfolio(p);
  return p;
}

}  // namespace cvarqo
