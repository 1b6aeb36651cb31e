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

#include "byzsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "byzsim/errors.hpp"

namespace byzsim {

double LearningRateSchedule::at(std::uint64_t t) const {
  if (decay_interval == 0) return gamma;
  return gamma * std::pow(decay_factor,
                          static_cast<double>(t / decay_interval));
}

void ExperimentConfig::validate() const {
  if (m < 1) throw ConfigError("config: m must be >= 1");
  if (q < 0) throw ConfigError("config: q must be >= 0");
  if (2 * q >= m) {
    throw ConfigError("config: threat model requires 2q < m, got m=" +
                      std::to_string(m) + " q=" + std::to_string(q));
  }
  if (n < 1) throw ConfigError("config: n must be >= 1");
  if (T < 1) throw ConfigError("config: T must be >= 1");
  if (gamma.gamma <= 0.0) throw ConfigError("config: gamma must be > 0");
  validate_rule(rule, static_cast<std::size_t>(m));
  if (x0 && x0->dimension() != problem.dimension()) {
    throw ConfigError("config: x0 dimension does not match the problem");
  }
}

std::vector<int> select_byzantine_indices(int m, int q, RngStream& rng) {
  if (q < 0 || 2 * q >= m) {
    throw ConfigError("select_byzantine_indices: need 0 <= q and 2q < m");
  }
  std::vector<int> pool(static_cast<std::size_t>(m));
  std::iota(pool.begin(), pool.end(), 0);
  // Partial Fisher-Yates: the first q slots become the sample.
  for (int i = 0; i < q; ++i) {
    const int j =
        i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(q));
  std::sort(pool.begin(), pool.end());
  return pool;
}

namespace {

std::vector<GradientVector> draw_honest_gradients(
    const ExperimentConfig& config, const GradientVector& x, std::uint64_t t) {
  const std::size_t m = static_cast<std::size_t>(config.m);
  std::vector<GradientVector> honest(m);
  auto draw_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      RngStream stream(config.master_seed, StreamPurpose::kWorkerGradient, i, t);
      honest[i] = config.problem.sample_gradient(
          x, static_cast<std::size_t>(config.n), stream);
    }
  };
  if (!config.parallel_workers || m < 2) {
    draw_range(0, m);
    return honest;
  }
  // Per-worker streams make the result identical to sequential evaluation.
  const std::size_t n_threads =
      std::min<std::size_t>(m, std::max(2u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  const std::size_t chunk = (m + n_threads - 1) / n_threads;
  for (std::size_t k = 0; k < n_threads; ++k) {
    const std::size_t begin = k * chunk;
    const std::size_t end = std::min(m, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(draw_range, begin, end);
  }
  for (auto& th : pool) th.join();
  return honest;
}

}  // namespace

GradientSet build_gradient_set(const ExperimentConfig& config,
                               const GradientVector& x, std::uint64_t t) {
  GradientSet set;
  set.honest = draw_honest_gradients(config, x, t);
  set.submitted = set.honest;

  if (config.attack.active_at(t) && config.q > 0) {
    RngStream selector(config.master_seed, StreamPurpose::kByzantineSelection,
                       t);
    set.byzantine_indices =
        select_byzantine_indices(config.m, config.q, selector);

    OmniscientView view;
    view.iteration = t;
    std::vector<bool> is_byz(set.honest.size(), false);
    for (int i : set.byzantine_indices) is_byz[static_cast<std::size_t>(i)] = true;
    for (std::size_t i = 0; i < set.honest.size(); ++i) {
      if (!is_byz[i]) view.correct_gradients.push_back(set.honest[i]);
    }

    auto crafted = craft(config.attack, view, config.q);
    if (crafted) {
      for (std::size_t k = 0; k < set.byzantine_indices.size(); ++k) {
        set.submitted[static_cast<std::size_t>(set.byzantine_indices[k])] =
            (*crafted)[k];
      }
    }
  }
  return set;
}

GradientVector initial_parameters(const ExperimentConfig& config) {
  if (config.x0) return *config.x0;
  const std::size_t d = config.problem.dimension();
  GradientVector center =
      config.problem.minimizer().value_or(GradientVector::zeros(d));
  if (config.x0_radius == 0.0) return center;

  RngStream rng(config.master_seed, StreamPurpose::kModelInit);
  std::vector<double> dir(d);
  double norm_sq = 0.0;
  do {
    for (std::size_t j = 0; j < d; ++j) dir[j] = rng.next_normal();
    norm_sq = 0.0;
    for (double v : dir) norm_sq += v * v;
  } while (norm_sq == 0.0);
  const double s = config.x0_radius / std::sqrt(norm_sq);
  std::vector<double> out(d);
  for (std::size_t j = 0; j < d; ++j) out[j] = center[j] + s * dir[j];
  return GradientVector(std::move(out));
}

RunTrace run_experiment(const ExperimentConfig& config) {
  config.validate();

  RunTrace trace{config, {}, GradientVector::zeros(config.problem.dimension()),
                 false};
  trace.metrics.reserve(config.T);

  GradientVector x = initial_parameters(config);
  for (std::uint64_t t = 0; t < config.T; ++t) {
    IterationMetrics row;
    row.iteration = t;
    row.loss = config.problem.loss(x);
    const GradientVector g = config.problem.full_gradient(x);
    row.grad_norm = l2_norm(g);

    if (row.loss > config.loss_divergence_bound ||
        l2_norm(x) > config.param_norm_divergence_bound) {
      row.diverged = true;
      trace.diverged = true;
      trace.metrics.push_back(std::move(row));
      break;
    }

    const GradientSet set = build_gradient_set(config, x, t);
    const AggregationOutcome outcome = aggregate(config.rule, set.submitted);

    row.inner_product = inner_product(g, outcome.aggregate);
    row.aggregate_norm = l2_norm(outcome.aggregate);
    row.byzantine_indices = set.byzantine_indices;
    row.selected_index = outcome.selected_index;
    if (outcome.selected_index) {
      row.selected_is_byzantine = std::binary_search(
          set.byzantine_indices.begin(), set.byzantine_indices.end(),
          static_cast<int>(*outcome.selected_index));
    }
    {
      std::vector<GradientVector> honest_only;
      honest_only.reserve(set.honest.size());
      std::vector<bool> is_byz(set.honest.size(), false);
      for (int i : set.byzantine_indices) is_byz[static_cast<std::size_t>(i)] = true;
      for (std::size_t i = 0; i < set.honest.size(); ++i) {
        if (!is_byz[i]) honest_only.push_back(set.honest[i]);
      }
      row.honest_mean_inner = inner_product(g, mean_of(honest_only));
    }
    trace.metrics.push_back(std::move(row));

    x = sub(x, scale(outcome.aggregate, config.gamma.at(t)));
  }
  trace.final_x = x;
  return trace;
}

}  // namespace byzsim
