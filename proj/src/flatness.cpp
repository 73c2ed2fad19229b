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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cvarqo/oracle.hpp"

namespace cvarqo {
namespace {

double dimension_of(int n) { return std::ldexp(1.0, n); }

double max_abs_amplitude(const StateVector& state) {
  double most = 0.0;
  for (const auto& a : state.amplitudes()) most = std::max(most, std::abs(a));
  return most;
}

// Sizes of maximal runs whose consecutive keys differ by at most tol.
template <typename Key>
void split_runs(std::vector<Complex>& items, std::size_t begin, std::size_t end, double tol,
                Key key, std::vector<std::pair<std::size_t, std::size_t>>& runs) {
  std::sort(items.begin() + begin, items.begin() + end,
            [&key](const Complex& a, const Complex& b) { return key(a) < key(b); });
  std::size_t start = begin;
  for (std::size_t i = begin + 1; i <= end; ++i) {
    if (i == end || key(items[i]) - key(items[i - 1]) > tol) {
      runs.emplace_back(start, i);
      start = i;
    }
  }
}

}  // namespace

double compute_delta(const DiagonalHamiltonian& h) { return enumerate(h).max_level_fraction(); }

double largest_amplitude_cluster(const StateVector& state, double tolerance) {
  if (!(tolerance >= 0.0)) throw std::invalid_argument("amplitude tolerance must be >= 0");
  std::vector<Complex> items(state.amplitudes().begin(), state.amplitudes().end());
  std::vector<std::pair<std::size_t, std::size_t>> by_real;
  split_runs(items, 0, items.size(), tolerance, [](const Complex& a) { return a.real(); }, by_real);
  std::size_t largest = 0;
  for (const auto& [begin, end] : by_real) {
    if (end - begin <= largest) continue;
    std::vector<std::pair<std::size_t, std::size_t>> by_imag;
    split_runs(items, begin, end, tolerance, [](const Complex& a) { return a.imag(); }, by_imag);
    for (const auto& [b, e] : by_imag) largest = std::max(largest, e - b);
  }
  return static_cast<double>(largest) / dimension_of(state.num_qubits());
}

std::vector<double> compute_Delta(std::span<const StateVector> snapshots, double tolerance) {
  if (snapshots.empty()) throw std::invalid_argument("compute_Delta needs at least the t = 0 snapshot");
  std::vector<double> out;
  out.reserve(snapshots.size());
  for (const auto& s : snapshots) {
    if (s.num_qubits() != snapshots.front().num_qubits()) {
      throw std::invalid_argument("snapshots have different qubit counts");
    }
    const double fraction = largest_amplitude_cluster(s, tolerance);
    out.push_back(out.empty() ? fraction : std::min(out.back(), fraction));
  }
  return out;
}

double flatness_bound(int n, int p, double delta, double Delta_previous) {
  const double base = dimension_of(n + 1) * (2.0 - Delta_previous - delta) + 1.0;
  return std::pow(base, p) / std::sqrt(dimension_of(n));
}

FlatnessReport check_bound(int n, int p, double delta, std::span<const double> Delta_per_layer,
                           double max_abs_amplitude, double amplitude_tolerance) {
  if (n < 1 || p < 0) throw std::invalid_argument("check_bound needs n >= 1 and p >= 0");
  if (Delta_per_layer.size() != static_cast<std::size_t>(p) + 1) {
    throw std::invalid_argument("expected " + std::to_string(p + 1) + " Delta values, got " +
                                std::to_string(Delta_per_layer.size()));
  }
  FlatnessReport r;
  r.n = n;
  r.p = p;
  r.delta = delta;
  r.Delta_per_layer.assign(Delta_per_layer.begin(), Delta_per_layer.end());
  r.max_abs_amplitude = max_abs_amplitude;
  r.amplitude_tolerance = amplitude_tolerance;
  const double Delta_previous = p == 0 ? 1.0 : Delta_per_layer[p - 1];
  r.bound_value = flatness_bound(n, p, delta, Delta_previous);
  r.bound_holds = max_abs_amplitude <= r.bound_value + r.equality_tolerance;
  const double Delta_p = Delta_per_layer[p];
  r.unstructured = Delta_p * dimension_of(n) <= 1.0 + 1e-9;
  if (p >= 1) {
    const double exponent =
        dimension_of(n) * (1.0 - delta + static_cast<double>(p - 1) / static_cast<double>(p));
    r.log_Delta_lower_bound = -3.0 * std::log(static_cast<double>(n)) * exponent;
    r.lower_bound_holds = *r.log_Delta_lower_bound <= std::log(Delta_p) + 1e-12;
  }
  return r;
}

std::vector<StateVector> diagonal_qaoa_snapshots(const DiagonalHamiltonian& h,
                                                 std::span<const double> theta) {
  if (theta.size() % 2 != 0) {
    throw std::invalid_argument("QAOA parameters come in (beta, gamma) pairs");
  }
  const int n = h.num_qubits();
  const std::size_t p = theta.size() / 2;
  const Complex uniform(1.0 / std::sqrt(dimension_of(n)), 0.0);
  std::vector<StateVector> snapshots;
  snapshots.push_back(StateVector::from_amplitudes(std::vector<Complex>(h.dimension(), uniform)));
  for (std::size_t layer = 0; layer < p; ++layer) {
    const double beta = theta[layer];
    const double gamma = theta[p + layer];
    std::vector<Complex> amps(snapshots.back().amplitudes().begin(),
                              snapshots.back().amplitudes().end());
    for (std::size_t j = 0; j < amps.size(); ++j) amps[j] *= std::polar(1.0, -gamma * h[j]);
    StateVector next = StateVector::from_amplitudes(std::move(amps));
    for (int q = 0; q < n; ++q) next.apply(Gate::rx(q, 2.0 * beta));
    snapshots.push_back(std::move(next));
  }
  return snapshots;
}

namespace {

FlatnessReport report_from_snapshots(const std::vector<StateVector>& snapshots,
                                     const DiagonalHamiltonian& h, double amplitude_tolerance) {
  const auto Delta = compute_Delta(snapshots, amplitude_tolerance);
  const int p = static_cast<int>(snapshots.size()) - 1;
  return check_bound(h.num_qubits(), p, compute_delta(h), Delta, max_abs_amplitude(snapshots.back()),
                     amplitude_tolerance);
}

}  // namespace

FlatnessReport analyze_qaoa(const AnsatzSpec& spec, const DiagonalHamiltonian& h,
                            std::span<const double> theta, double amplitude_tolerance) {
  if (spec.family != AnsatzFamily::Qaoa) throw std::invalid_argument("analyze_qaoa needs a QAOA spec");
  if (spec.num_qubits != h.num_qubits()) {
    throw std::invalid_argument("ansatz and Hamiltonian qubit counts differ");
  }
  return report_from_snapshots(qaoa_layer_snapshots(spec, theta), h, amplitude_tolerance);
}

FlatnessReport analyze_diagonal_qaoa(const DiagonalHamiltonian& h, std::span<const double> theta,
                                     double amplitude_tolerance) {
  return report_from_snapshots(diagonal_qaoa_snapshots(h, theta), h, amplitude_tolerance);
}

DiagonalHamiltonian needle_hamiltonian(int num_qubits, BasisIndex marked) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("needle Hamiltonian qubit count out of range");
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (marked >= dim) throw std::out_of_range("marked basis state out of range");
  std::vector<double> diag(dim, 1.0);
  diag[marked] = 0.0;
  return DiagonalHamiltonian(num_qubits, std::move(diag));
}

double DecayFit::predict(int n) const { return std::exp2(intercept - epsilon * n); }

DecayFit fit_amplitude_decay(std::span<const int> ns, std::span<const double> amplitudes) {
  if (ns.size() < 2 || ns.size() != amplitudes.size()) {
    throw std::invalid_argument("decay fit needs at least two (n, amplitude) pairs");
  }
  const double k = static_cast<double>(ns.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(amplitudes[i] > 0.0)) throw std::invalid_argument("amplitudes must be positive");
    const double x = ns[i];
    const double y = std::log2(amplitudes[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = k * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("decay fit needs at least two distinct n");
  const double slope = (k * sxy - sx * sy) / denom;
  return {(sy - slope * sx) / k, -slope};
}

void to_json(nlohmann::json& j, const FlatnessReport& r) {
  j = nlohmann::json{{"n", r.n},
                     {"p", r.p},
                     {"delta", r.delta},
                     {"Delta_per_layer", r.Delta_per_layer},
                     {"max_abs_amplitude", r.max_abs_amplitude},
                     {"bound_value", r.bound_value},
                     {"bound_holds", r.bound_holds},
                     {"equality_tolerance", r.equality_tolerance},
                     {"amplitude_tolerance", r.amplitude_tolerance},
                     {"unstructured", r.unstructured}};
  j["log_Delta_lower_bound"] =
      r.log_Delta_lower_bound ? nlohmann::json(*r.log_Delta_lower_bound) : nlohmann::json(nullptr);
  j["lower_bound_holds"] =
      r.lower_bound_holds ? nlohmann::json(*r.lower_bound_holds) : nlohmann::json(nullptr);
}

}  // namespace cvarqo
