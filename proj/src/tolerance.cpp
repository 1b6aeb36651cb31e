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

#include "byzsim/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "byzsim/errors.hpp"
#include "byzsim/rng.hpp"

namespace byzsim {
namespace {

// Relative slack for assumption flags whose construction sits exactly on the
// <= boundary (epsilon = 1 makes beta^2 equal epsilon^2 ||v_bar||^2).
constexpr double kBoundaryTol = 1e-9;

GradientVector draw_normal_vector(const GradientVector& mean, double sigma,
                                  RngStream& rng) {
  std::vector<double> out(mean.dimension());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = mean[j] + sigma * rng.next_normal();
  }
  return GradientVector(std::move(out));
}

}  // namespace

ToleranceVerdict check_tolerance(const AggregationRule& rule,
                                 const AttackSpec& attack,
                                 const GradientDistribution& dist, int m,
                                 int q, std::uint64_t trials,
                                 std::uint64_t seed) {
  if (m < 1 || q < 0 || 2 * q >= m) {
    throw ConfigError("check_tolerance: need m >= 1 and 2q < m");
  }
  if (trials < 100) throw ConfigError("check_tolerance: trials must be >= 100");
  validate_rule(rule, static_cast<std::size_t>(m));

  const std::size_t d = dist.mean.dimension();
  const bool attacked = attack.kind != AttackKind::kNone && q > 0;
  const int honest_count = attacked ? m - q : m;

  std::vector<KahanSum> aggregate_acc(d);
  // Welford on the per-trial inner product <g, Aggr>.
  double ip_mean = 0.0;
  double ip_m2 = 0.0;

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    RngStream rng(seed, StreamPurpose::kMonteCarloTrial, trial);
    std::vector<GradientVector> inputs;
    inputs.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < honest_count; ++i) {
      inputs.push_back(draw_normal_vector(dist.mean, dist.sigma, rng));
    }
    if (attacked) {
      OmniscientView view{inputs, attack.start_iteration};
      auto crafted = craft(attack, view, q);
      for (auto& u : *crafted) inputs.push_back(std::move(u));
    }
    const AggregationOutcome outcome = aggregate(rule, inputs);

    for (std::size_t j = 0; j < d; ++j) {
      aggregate_acc[j].add(outcome.aggregate[j]);
    }
    const double y = inner_product(dist.mean, outcome.aggregate);
    const double delta = y - ip_mean;
    ip_mean += delta / static_cast<double>(trial + 1);
    ip_m2 += delta * (y - ip_mean);
  }

  ToleranceVerdict verdict;
  std::vector<double> avg(d);
  for (std::size_t j = 0; j < d; ++j) {
    avg[j] = aggregate_acc[j].value() / static_cast<double>(trials);
  }
  verdict.estimated_expected_aggregate = GradientVector(std::move(avg));
  verdict.inner_product_with_g = ip_mean;
  verdict.standard_error =
      std::sqrt(ip_m2 / static_cast<double>(trials - 1) /
                static_cast<double>(trials));
  verdict.trials = trials;
  const bool significantly_negative =
      ip_mean + kOneSidedZ99 * verdict.standard_error < 0.0;
  verdict.tolerant = !significantly_negative;
  return verdict;
}

ConditionResult theorem1_condition(const GradientVector& g, double sigma,
                                   int m, int q) {
  if (m - q < 2) throw ConfigError("theorem1_condition: need m - q >= 2");
  if (sigma <= 0.0) throw ConfigError("theorem1_condition: sigma must be > 0");
  double max_abs = 0.0;
  for (std::size_t j = 0; j < g.dimension(); ++j) {
    max_abs = std::max(max_abs, std::abs(g[j]));
  }
  const double threshold = sigma / std::sqrt(static_cast<double>(m - q - 1));
  return ConditionResult{max_abs < threshold, threshold - max_abs};
}

SizeCondition theorem2_condition(int m, int q, double epsilon) {
  if (epsilon == 0.0 || !std::isfinite(epsilon)) {
    throw ConfigError("theorem2_condition: epsilon must be nonzero and finite");
  }
  const double e = epsilon;
  const double threshold = 2.0 * (e + 2.0) * (e + 2.0) / (e * e) + 2.0;
  SizeCondition result;
  result.minimal_honest_count = static_cast<int>(std::floor(threshold)) + 1;
  result.holds = static_cast<double>(m - q) > threshold;
  return result;
}

Theorem2Instance build_theorem2_instance(int m, int q, double epsilon,
                                         std::size_t d, std::uint64_t seed) {
  if (m - 2 * q != 3) {
    throw ConfigError("build_theorem2_instance: worst case requires m - 2q = 3");
  }
  if (epsilon <= 0.0) {
    throw ConfigError("build_theorem2_instance: epsilon must be > 0");
  }
  const SizeCondition size = theorem2_condition(m, q, epsilon);
  if (!size.holds) {
    throw ConfigError(
        "build_theorem2_instance: size condition violated, needs m - q >= " +
        std::to_string(size.minimal_honest_count) + " but m - q = " +
        std::to_string(m - q));
  }
  if (epsilon > 1.0) {
    // Separation beta >= epsilon ||v_bar|| cannot coexist with the radius
    // bound ||v_i - v_bar|| <= ||v_bar|| on this lattice-shell layout.
    throw ConfigError(
        "build_theorem2_instance: epsilon > 1 is infeasible for the "
        "shell construction (separation exceeds the correct-gradient ball)");
  }
  if (d < 2) {
    throw ConfigError("build_theorem2_instance: d must be >= 2");
  }

  const std::size_t count = static_cast<std::size_t>(m - q);
  const std::size_t pairs_needed = count / 2;  // antipodal perturbation pairs
  const std::size_t pairs_available = d * (d - 1);
  if (pairs_needed > pairs_available) {
    throw ConfigError(
        "build_theorem2_instance: cannot fit " + std::to_string(count) +
        " separated correct gradients in dimension " + std::to_string(d) +
        " (at most " + std::to_string(2 * pairs_available + 1) + ")");
  }
  if (count % 2 == 0 && pairs_needed * 2 != count) {
    throw ConfigError("build_theorem2_instance: internal pairing error");
  }

  RngStream rng(seed, StreamPurpose::kInstanceJitter);
  // Seed-controlled signed coordinate permutation and scale: exact isometry,
  // so the tight distance/radius relations survive verbatim.
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = d; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.next_below(i)]);
  }
  std::vector<double> sign(d);
  for (std::size_t j = 0; j < d; ++j) sign[j] = rng.next_u64() & 1 ? 1.0 : -1.0;
  const double t = 1.0 + rng.next_unit();       // base scale
  const double s = t * std::sqrt(epsilon);      // perturbation scale, s <= t

  auto two_coordinate_vector = [&](std::size_t a, std::size_t b, double va,
                                   double vb) {
    std::vector<double> out(d, 0.0);
    out[perm[a]] = sign[perm[a]] * va;
    out[perm[b]] = sign[perm[b]] * vb;
    return GradientVector(std::move(out));
  };

  const GradientVector base = two_coordinate_vector(0, 1, t, t);

  // Minimal vectors of the D_d lattice (two nonzero entries, +-1), scaled by
  // s: all have norm s*sqrt(2) and pairwise distance >= s*sqrt(2).
  std::vector<GradientVector> directions;
  for (std::size_t a = 0; a < d && directions.size() < pairs_needed; ++a) {
    for (std::size_t b = a + 1; b < d && directions.size() < pairs_needed; ++b) {
      directions.push_back(two_coordinate_vector(a, b, s, s));
      if (directions.size() < pairs_needed) {
        directions.push_back(two_coordinate_vector(a, b, s, -s));
      }
    }
  }

  Theorem2Instance instance;
  instance.correct.reserve(count);
  if (count % 2 == 1) instance.correct.push_back(base);
  for (const auto& p : directions) {
    instance.correct.push_back(add(base, p));
    instance.correct.push_back(sub(base, p));
  }

  const GradientVector v_bar = mean_of(instance.correct);
  const GradientVector u = scale(v_bar, -epsilon);
  instance.byzantine.assign(static_cast<std::size_t>(q), u);

  Theorem2Report& report = instance.report;
  report.correct_mean = v_bar;
  report.size_ok = size.holds;

  const double v_bar_norm_sq = l2_norm_sq(v_bar);
  report.radius_ok = true;
  for (const auto& v : instance.correct) {
    if (l2_norm_sq(sub(v, v_bar)) > v_bar_norm_sq * (1.0 + kBoundaryTol)) {
      report.radius_ok = false;
    }
  }
  report.beta_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < instance.correct.size(); ++i) {
    for (std::size_t j = i + 1; j < instance.correct.size(); ++j) {
      report.beta_sq = std::min(
          report.beta_sq,
          l2_norm_sq(sub(instance.correct[i], instance.correct[j])));
    }
  }
  report.distinct_ok = report.beta_sq > 0.0;
  report.epsilon_ok =
      epsilon * epsilon * v_bar_norm_sq <= report.beta_sq * (1.0 + kBoundaryTol);

  std::vector<GradientVector> all = instance.correct;
  all.insert(all.end(), instance.byzantine.begin(), instance.byzantine.end());
  const AggregationOutcome outcome = krum(all, q);
  double min_correct = std::numeric_limits<double>::infinity();
  double max_byz = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const double score = (*outcome.scores)[i];
    if (i < instance.correct.size()) {
      min_correct = std::min(min_correct, score);
    } else {
      max_byz = std::max(max_byz, score);
    }
  }
  report.krum_score_gap = min_correct - max_byz;
  return instance;
}

OrderStatEstimate order_statistic_mean(int n_samples, double mean,
                                       double sigma, int which,
                                       std::uint64_t trials,
                                       std::uint64_t seed) {
  if (n_samples < 1 || which < 1 || which > n_samples) {
    throw ConfigError("order_statistic_mean: need 1 <= which <= n_samples");
  }
  if (trials < 1000) {
    throw ConfigError("order_statistic_mean: trials must be >= 1000");
  }
  double est = 0.0;
  double m2 = 0.0;
  std::vector<double> draws(static_cast<std::size_t>(n_samples));
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    RngStream rng(seed, StreamPurpose::kMonteCarloTrial, trial, 1);
    for (auto& x : draws) x = mean + sigma * rng.next_normal();
    std::nth_element(draws.begin(), draws.begin() + (which - 1), draws.end());
    const double y = draws[static_cast<std::size_t>(which - 1)];
    const double delta = y - est;
    est += delta / static_cast<double>(trial + 1);
    m2 += delta * (y - est);
  }
  OrderStatEstimate out;
  out.mean = est;
  out.standard_error = std::sqrt(m2 / static_cast<double>(trials - 1) /
                                 static_cast<double>(trials));
  return out;
}

}  // namespace byzsim
