// Copyright 2026 The byzsim Authors
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

#ifndef BYZSIM_SIMULATOR_HPP
#define BYZSIM_SIMULATOR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "byzsim/aggregation.hpp"
#include "byzsim/attacks.hpp"
#include "byzsim/gradient_vector.hpp"
#include "byzsim/problems.hpp"
#include "byzsim/rng.hpp"

namespace byzsim {

/// Constant learning rate with optional step decay
/// (gamma * decay_factor^floor(t / decay_interval) when decay_interval > 0).
struct LearningRateSchedule {
  double gamma = 0.1;
  double decay_factor = 1.0;
  std::uint64_t decay_interval = 0;

  double at(std::uint64_t t) const;
};

struct ExperimentConfig {
  int m = 1;                 // worker count
  int q = 0;                 // Byzantine count
  int n = 1;                 // minibatch size per worker
  std::uint64_t T = 1;       // iteration count
  LearningRateSchedule gamma;
  AggregationRule rule;
  AttackSpec attack;
  Problem problem = Problem::gaussian_quadratic(1, 0.0, GradientVector::zeros(1));
  std::uint64_t master_seed = 0;
  /// Initial parameters: explicit, or minimizer (zeros if unknown) plus a
  /// seeded random direction of length x0_radius.
  std::optional<GradientVector> x0;
  double x0_radius = 1.0;
  bool parallel_workers = false;
  double loss_divergence_bound = 1e12;
  double param_norm_divergence_bound = 1e9;

  void validate() const;  // throws ConfigError
};

struct IterationMetrics {
  std::uint64_t iteration = 0;
  double loss = 0.0;
  double grad_norm = 0.0;        // ||full_gradient(x^t)||
  double inner_product = 0.0;    // <full_gradient(x^t), aggregate>
  double aggregate_norm = 0.0;
  double honest_mean_inner = 0.0;  // <full_gradient(x^t), mean(honest)>
  std::vector<int> byzantine_indices;  // empty before attack onset
  std::optional<std::size_t> selected_index;   // Krum only
  std::optional<bool> selected_is_byzantine;   // Krum only
  bool diverged = false;
};

struct RunTrace {
  ExperimentConfig config;
  std::vector<IterationMetrics> metrics;
  GradientVector final_x;
  bool diverged = false;
};

/// Uniformly random size-q subset of {0,...,m-1}, sorted ascending.
std::vector<int> select_byzantine_indices(int m, int q, RngStream& rng);

/// One iteration's gradient set: honest draws for all m workers, the
/// Byzantine subset for this iteration (empty when the attack is inactive),
/// and the final ordered list the server aggregates.
struct GradientSet {
  std::vector<GradientVector> submitted;  // length m, indexed by worker
  std::vector<GradientVector> honest;     // length m, pre-replacement draws
  std::vector<int> byzantine_indices;     // sorted, size q when active
};

GradientSet build_gradient_set(const ExperimentConfig& config,
                               const GradientVector& x, std::uint64_t t);

GradientVector initial_parameters(const ExperimentConfig& config);

/// Runs Algorithm-style synchronous SGD for T iterations (or until the
/// divergence guard trips). The trace is a pure function of the config.
RunTrace run_experiment(const ExperimentConfig& config);

}  // namespace byzsim

#endif  // BYZSIM_SIMULATOR_HPP
