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

#ifndef BYZSIM_AGGREGATION_HPP
#define BYZSIM_AGGREGATION_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "byzsim/gradient_vector.hpp"

namespace byzsim {

enum class RuleKind { kMean, kCoordinateWiseMedian, kKrum };

/// Strategy descriptor for the server-side aggregation step.
/// declared_byzantine_count is Krum's q; ignored by the other rules.
struct AggregationRule {
  RuleKind kind = RuleKind::kMean;
  int declared_byzantine_count = 0;
};

struct AggregationOutcome {
  GradientVector aggregate;
  /// Krum's argmin k; nullopt for Mean/Median. The aggregate equals the
  /// input at this index exactly.
  std::optional<std::size_t> selected_index;
  /// Per-input KR scores (Krum only).
  std::optional<std::vector<double>> scores;
};

/// Throws ConfigError if the rule cannot be applied to m inputs
/// (Krum needs m - q - 2 >= 1 and m - 2q > 2; Median under the threat
/// model needs 2q < m, checked at experiment-config level).
void validate_rule(const AggregationRule& rule, std::size_t m);

/// Per-coordinate one-dimensional median. Odd m: middle order statistic;
/// even m: arithmetic mean of the two middle order statistics.
GradientVector coordinate_median(const std::vector<GradientVector>& inputs);

/// Sum of squared distances from input i to its m-q-2 nearest other inputs.
/// Neighbor ties break by ascending index (the sum is unaffected either way).
double krum_score(std::size_t i, const std::vector<GradientVector>& inputs,
                  int q);

/// Selects the input with minimal KR score; argmin ties break by lowest index.
AggregationOutcome krum(const std::vector<GradientVector>& inputs, int q);

/// Dispatches to mean_of / coordinate_median / krum.
AggregationOutcome aggregate(const AggregationRule& rule,
                             const std::vector<GradientVector>& inputs);

}  // namespace byzsim

#endif  // BYZSIM_AGGREGATION_HPP
