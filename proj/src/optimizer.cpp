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

#include "cvarqo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace cvarqo {
namespace {

// Simplex acceptability thresholds and geometry-step scale from COBYLA.
constexpr double kMinFaceDistance = 0.25;  // times rho
constexpr double kMaxEdge = 2.1;           // times rho
constexpr double kEdgeDrop = 1.1;          // times rho
constexpr double kGeometryStep = 0.5;      // times rho
constexpr double kGoodReduction = 0.1;

// Differences below this are treated as rounding noise, so a flat landscape
// does not drag the incumbent around.
double noise_floor(double f) { return 1e-13 * std::max(1.0, std::abs(f)); }

struct StopOptimization {};

class Cobyla {
 public:
  Cobyla(const Objective& objective, const OptimizerConfig& config, const Observer& observer)
      : objective_(objective), config_(config), observer_(observer),
        dim_(static_cast<Eigen::Index>(config.initial_point.size())) {}

  RunTrace run() {
    double rho = config_.initial_step;
    try {
      build_initial_simplex(rho);
      bool just_improved_geometry = false;
      while (true) {
        select_pivot();
        if (!factor()) {
          rebuild_simplex(rho);
          continue;
        }
        const Acceptability acc = acceptability(rho);
        if (!acc.acceptable && !just_improved_geometry) {
          geometry_step(rho, acc);
          just_improved_geometry = true;
          continue;
        }
        just_improved_geometry = false;

        const Eigen::VectorXd g = gradient();
        const double gnorm = g.norm();
        const double predicted = rho * gnorm;
        bool poor = true;
        if (predicted > noise_floor(pivot_value())) {
          const Eigen::VectorXd dx = -(rho / gnorm) * g;
          const double f_new = evaluate(pivot_point() + dx);
          double reduction = pivot_value() - f_new;
          if (std::abs(reduction) <= noise_floor(pivot_value())) reduction = 0.0;
          replace_vertex(dx, f_new, reduction, acc, rho);
          poor = reduction <= kGoodReduction * predicted;
        }
        if (!poor) continue;
        if (!acc.acceptable) {
          // Improve geometry before concluding the model is exhausted at this radius.
          continue;
        }
        if (rho <= config_.final_step) break;
        rho *= 0.5;
        if (rho <= 1.5 * config_.final_step) rho = config_.final_step;
      }
    } catch (const StopOptimization&) {
      trace_.termination = Termination::BudgetExhausted;
    }
    trace_.final_step = rho;
    select_pivot();
    trace_.final_point.assign(pivot_point().data(), pivot_point().data() + dim_);
    return std::move(trace_);
  }

 private:
  struct Acceptability {
    bool acceptable = true;
    Eigen::VectorXd face_distance;  // distance of vertex j from the opposite face
    Eigen::VectorXd edge;           // distance of vertex j from the pivot
  };

  const Eigen::VectorXd& pivot_point() const { return points_[pivot_]; }
  double pivot_value() const { return values_[pivot_]; }

  double evaluate(const Eigen::VectorXd& x) {
    if (static_cast<int>(trace_.records.size()) >= config_.max_evaluations) {
      throw StopOptimization{};
    }
    const std::span<const double> view(x.data(), static_cast<std::size_t>(x.size()));
    const Evaluation e = objective_(view);
    EvaluationRecord record;
    record.index = trace_.records.size() + 1;
    record.point.assign(x.data(), x.data() + x.size());
    record.value = e.value;
    record.overlap = e.overlap;
    record.best_bitstring = e.best_bitstring;
    record.best_bitstring_value = e.best_bitstring_value;
    if (!std::isfinite(e.value)) {
      std::ostringstream msg;
      msg << "objective returned a non-finite value at evaluation " << record.index
          << ", point (";
      for (Eigen::Index i = 0; i < x.size(); ++i) msg << (i ? ", " : "") << x[i];
      msg << ")";
      throw OptimizationError(msg.str());
    }
    if (e.value < trace_.best_value) {
      trace_.best_value = e.value;
      trace_.best_point = record.point;
    }
    trace_.records.push_back(record);
    if (observer_) observer_(trace_.records.back());
    return e.value;
  }

  void build_initial_simplex(double rho) {
    Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(config_.initial_point.data(), dim_);
    points_.assign(1, x0);
    values_.assign(1, evaluate(x0));
    pivot_ = 0;
    for (Eigen::Index j = 0; j < dim_; ++j) {
      Eigen::VectorXd x = x0;
      x[j] += rho;
      points_.push_back(x);
      values_.push_back(evaluate(x));
    }
  }

  void rebuild_simplex(double rho) {
    const Eigen::VectorXd x0 = pivot_point();
    const double f0 = pivot_value();
    points_.assign(1, x0);
    values_.assign(1, f0);
    pivot_ = 0;
    for (Eigen::Index j = 0; j < dim_; ++j) {
      Eigen::VectorXd x = x0;
      x[j] += rho;
      points_.push_back(x);
      values_.push_back(evaluate(x));
    }
  }

  void select_pivot() {
    for (std::size_t j = 0; j < values_.size(); ++j) {
      if (values_[j] < values_[pivot_] - noise_floor(values_[pivot_])) pivot_ = j;
    }
  }

  // Column k of displacements_ is vertex others_[k] minus the pivot.
  bool factor() {
    others_.clear();
    for (std::size_t j = 0; j < points_.size(); ++j) {
      if (j != pivot_) others_.push_back(j);
    }
    displacements_.resize(dim_, dim_);
    for (Eigen::Index k = 0; k < dim_; ++k) {
      displacements_.col(k) = points_[others_[k]] - pivot_point();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(displacements_);
    if (!lu.isInvertible()) return false;
    inverse_ = lu.inverse();
    return inverse_.allFinite();
  }

  Eigen::VectorXd gradient() const {
    Eigen::VectorXd df(dim_);
    for (Eigen::Index k = 0; k < dim_; ++k) df[k] = values_[others_[k]] - pivot_value();
    // displacement_k . g = df_k for every k.
    return inverse_.transpose() * df;
  }

  Acceptability acceptability(double rho) const {
    Acceptability acc;
    acc.face_distance.resize(dim_);
    acc.edge.resize(dim_);
    for (Eigen::Index k = 0; k < dim_; ++k) {
      acc.face_distance[k] = 1.0 / inverse_.row(k).norm();
      acc.edge[k] = displacements_.col(k).norm();
      if (acc.face_distance[k] < kMinFaceDistance * rho || acc.edge[k] > kMaxEdge * rho) {
        acc.acceptable = false;
      }
    }
    return acc;
  }

  void geometry_step(double rho, const Acceptability& acc) {
    Eigen::Index drop = 0;
    double worst_edge = kMaxEdge * rho;
    bool long_edge = false;
    for (Eigen::Index k = 0; k < dim_; ++k) {
      if (acc.edge[k] > worst_edge) {
        worst_edge = acc.edge[k];
        drop = k;
        long_edge = true;
      }
    }
    if (!long_edge) {
      acc.face_distance.minCoeff(&drop);
    }
    // Move perpendicular to the face opposite the dropped vertex.
    Eigen::VectorXd dx = (kGeometryStep * rho * acc.face_distance[drop]) *
                         inverse_.row(drop).transpose();
    if (gradient().dot(dx) > 0.0) dx = -dx;
    const Eigen::VectorXd x = pivot_point() + dx;
    const double f = evaluate(x);
    points_[others_[drop]] = x;
    values_[others_[drop]] = f;
  }

  void replace_vertex(const Eigen::VectorXd& dx, double f_new, double reduction,
                      const Acceptability& acc, double rho) {
    const std::size_t new_index_slot = others_.size();  // sentinel: none
    std::size_t drop = new_index_slot;
    double best = reduction > 0.0 ? 0.0 : 1.0;
    Eigen::VectorXd sigbar(dim_);
    for (Eigen::Index k = 0; k < dim_; ++k) {
      const double t = std::abs(inverse_.row(k).dot(dx));
      if (t > best) {
        best = t;
        drop = static_cast<std::size_t>(k);
      }
      sigbar[k] = t * acc.face_distance[k];
    }
    double edge_max = kEdgeDrop * rho;
    for (Eigen::Index k = 0; k < dim_; ++k) {
      if (sigbar[k] >= kMinFaceDistance * rho || sigbar[k] >= acc.face_distance[k]) {
        const double t =
            reduction > 0.0 ? (dx - displacements_.col(k)).norm() : acc.edge[k];
        if (t > edge_max) {
          edge_max = t;
          drop = static_cast<std::size_t>(k);
        }
      }
    }
    if (drop == new_index_slot) return;
    const std::size_t slot = others_[drop];
    points_[slot] = pivot_point() + dx;
    values_[slot] = f_new;
    if (reduction > 0.0) pivot_ = slot;
  }

  const Objective& objective_;
  const OptimizerConfig& config_;
  const Observer& observer_;
  Eigen::Index dim_;

  std::vector<Eigen::VectorXd> points_;
  std::vector<double> values_;
  std::size_t pivot_ = 0;
  std::vector<std::size_t> others_;
  Eigen::MatrixXd displacements_;
  Eigen::MatrixXd inverse_;
  RunTrace trace_;
};

}  // namespace

void OptimizerConfig::validate() const {
  const auto dim = static_cast<int>(initial_point.size());
  if (dim < 1) throw std::invalid_argument("optimizer needs at least one parameter");
  if (max_evaluations < dim + 2) {
    throw std::invalid_argument("max_evaluations must be >= dimension + 2 (" +
                                std::to_string(dim + 2) + ")");
  }
  if (!(final_step > 0.0) || !(final_step < initial_step)) {
    throw std::invalid_argument("need 0 < final_step < initial_step");
  }
  for (double v : initial_point) {
    if (!std::isfinite(v)) throw std::invalid_argument("initial point has non-finite entries");
  }
}

RunTrace minimize(const Objective& objective, const OptimizerConfig& config,
                  const Observer& observer) {
  config.validate();
  if (!objective) throw std::invalid_argument("empty objective");
  return Cobyla(objective, config, observer).run();
}

std::pair<BasisIndex, double> best_observed_solution(const RunTrace& trace) {
  if (trace.records.empty()) throw std::invalid_argument("empty run trace");
  std::optional<std::pair<BasisIndex, double>> best;
  for (const auto& r : trace.records) {
    if (!r.best_bitstring) continue;
    if (!best || r.best_bitstring_value < best->second) {
      best = std::make_pair(*r.best_bitstring, r.best_bitstring_value);
    }
  }
  if (!best) throw std::invalid_argument("run trace carries no observed bitstrings");
  return *best;
}

}  // namespace cvarqo
