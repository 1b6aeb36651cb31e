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

#ifndef BYZSIM_TOLERANCE_HPP
#define BYZSIM_TOLERANCE_HPP

#include <cstdint>
#include <vector>

#include "byzsim/aggregation.hpp"
#include "byzsim/attacks.hpp"
#include "byzsim/gradient_vector.hpp"

namespace byzsim {

/// Per-coordinate i.i.d. Normal(mean_j, sigma^2) gradient model used by the
/// Monte-Carlo tolerance checker. sigma must be a valid lower bound on the
/// true per-coordinate standard deviation for the condition checkers to be
/// meaningful.
struct GradientDistribution {
  GradientVector mean;  // g
  double sigma = 1.0;
};

/// Monte-Carlo verdict on the revised Byzantine-tolerance requirement
/// <g, E[Aggr(V u U)]> >= 0. "tolerant" is decided by a one-sided 99%
/// confidence test on the inner-product estimate, never by the point
/// estimate alone: non-tolerant only when the estimate is significantly
/// negative.
struct ToleranceVerdict {
  GradientVector estimated_expected_aggregate;
  double inner_product_with_g = 0.0;
  double standard_error = 0.0;
  std::uint64_t trials = 0;
  bool tolerant = true;
};

/// One-sided z for the 99% confidence verdict.
inline constexpr double kOneSidedZ99 = 2.3263478740408408;

/// Per trial: draw the correct gradients from Normal(g, sigma^2 I), craft
/// the q Byzantine gradients (deterministic given the draw), aggregate, and
/// average. With attack None all m workers are honest.
ToleranceVerdict check_tolerance(const AggregationRule& rule,
                                 const AttackSpec& attack,
                                 const GradientDistribution& dist, int m,
                                 int q, std::uint64_t trials,
                                 std::uint64_t seed);

struct ConditionResult {
  bool holds = false;
  double margin = 0.0;  // threshold minus max_j |g_j|
};

/// Median-attack sufficient condition: max_j |g_j| < sigma / sqrt(m-q-1).
ConditionResult theorem1_condition(const GradientVector& g, double sigma,
                                   int m, int q);

struct SizeCondition {
  bool holds = false;
  int minimal_honest_count = 0;  // smallest m-q satisfying the inequality
};

/// Krum-attack size condition: m-q > 2(epsilon+2)^2/epsilon^2 + 2.
SizeCondition theorem2_condition(int m, int q, double epsilon);

/// Assumption flags for a constructed Krum-attack instance. When all four
/// hold, krum_score_gap > 0: every Byzantine gradient outscores (is selected
/// over) every correct one.
struct Theorem2Report {
  GradientVector correct_mean;  // v-bar
  double beta_sq = 0.0;         // min squared pairwise distance among correct
  bool radius_ok = false;       // all ||v_i - v_bar||^2 <= ||v_bar||^2
  bool distinct_ok = false;
  bool epsilon_ok = false;      // epsilon^2 ||v_bar||^2 <= beta^2
  bool size_ok = false;
  double krum_score_gap = 0.0;  // min KR over correct - max KR over Byzantine
};

struct Theorem2Instance {
  std::vector<GradientVector> correct;    // m-q vectors
  std::vector<GradientVector> byzantine;  // q copies of -epsilon * v_bar
  Theorem2Report report;
};

/// Builds a worst-case (m-2q = 3) instance: correct gradients on a scaled
/// lattice shell around a seed-chosen base vector, Byzantine gradients all
/// -epsilon * v_bar. Refuses (ConfigError naming the violated constraint)
/// when the parameters cannot satisfy the assumptions.
Theorem2Instance build_theorem2_instance(int m, int q, double epsilon,
                                         std::size_t d, std::uint64_t seed);

struct OrderStatEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Monte-Carlo estimate of E[i-th smallest of n i.i.d. Normal(mean, sigma^2)
/// draws]; which is 1-based.
OrderStatEstimate order_statistic_mean(int n_samples, double mean,
                                       double sigma, int which,
                                       std::uint64_t trials,
                                       std::uint64_t seed);

/// Compensated (Kahan) accumulator so large Monte-Carlo reductions agree
/// across summation orders within tight bounds.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace byzsim

#endif  // BYZSIM_TOLERANCE_HPP
