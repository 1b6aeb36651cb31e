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

#include "byzsim/aggregation.hpp"

#include <algorithm>
#include <string>

#include "byzsim/errors.hpp"

namespace byzsim {
namespace {

void check_inputs(const std::vector<GradientVector>& inputs) {
  if (inputs.empty()) throw ConfigError("aggregation: empty input list");
  for (const auto& v : inputs) {
    if (v.dimension() != inputs.front().dimension()) {
      throw ConfigError("aggregation: inputs have mismatched dimensions");
    }
  }
}

int krum_neighbor_count(std::size_t m, int q) {
  return static_cast<int>(m) - q - 2;
}

std::vector<double> pairwise_sq_distances(
    const std::vector<GradientVector>& inputs) {
  const std::size_t m = inputs.size();
  std::vector<double> dist(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double d = l2_norm_sq(sub(inputs[i], inputs[j]));
      dist[i * m + j] = d;
      dist[j * m + i] = d;
    }
  }
  return dist;
}

double score_from_row(const std::vector<double>& dist, std::size_t m,
                      std::size_t i, int neighbors) {
  std::vector<double> row;
  row.reserve(m - 1);
  for (std::size_t j = 0; j < m; ++j) {
    if (j != i) row.push_back(dist[i * m + j]);
  }
  std::partial_sort(row.begin(), row.begin() + neighbors, row.end());
  double sum = 0.0;
  for (int k = 0; k < neighbors; ++k) sum += row[k];
  return sum;
}

}  // namespace

void validate_rule(const AggregationRule& rule, std::size_t m) {
  if (m == 0) throw ConfigError("aggregation: m must be at least 1");
  if (rule.kind == RuleKind::kKrum) {
    const int q = rule.declared_byzantine_count;
    if (q < 0) throw ConfigError("Krum: q must be nonnegative");
    if (static_cast<int>(m) - 2 * q <= 2) {
      throw ConfigError("Krum requires m - 2q > 2, got m=" + std::to_string(m) +
                        " q=" + std::to_string(q));
    }
    if (krum_neighbor_count(m, q) < 1) {
      throw ConfigError("Krum: m - q - 2 must be at least 1");
    }
  }
}

GradientVector coordinate_median(const std::vector<GradientVector>& inputs) {
  check_inputs(inputs);
  const std::size_t m = inputs.size();
  const std::size_t d = inputs.front().dimension();
  std::vector<double> out(d);
  std::vector<double> column(m);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < m; ++i) column[i] = inputs[i][j];
    const std::size_t mid = m / 2;
    std::nth_element(column.begin(), column.begin() + mid, column.end());
    if (m % 2 == 1) {
      out[j] = column[mid];
    } else {
      const double upper = column[mid];
      const double lower =
          *std::max_element(column.begin(), column.begin() + mid);
      out[j] = 0.5 * (lower + upper);
    }
  }
  return GradientVector(std::move(out));
}

double krum_score(std::size_t i, const std::vector<GradientVector>& inputs,
                  int q) {
  check_inputs(inputs);
  const std::size_t m = inputs.size();
  if (i >= m) throw ConfigError("krum_score: index out of range");
  const int neighbors = krum_neighbor_count(m, q);
  if (neighbors < 1) throw ConfigError("krum_score: m - q - 2 must be >= 1");
  return score_from_row(pairwise_sq_distances(inputs), m, i, neighbors);
}

AggregationOutcome krum(const std::vector<GradientVector>& inputs, int q) {
  check_inputs(inputs);
  const std::size_t m = inputs.size();
  const int neighbors = krum_neighbor_count(m, q);
  if (neighbors < 1) throw ConfigError("krum: m - q - 2 must be >= 1");

  const auto dist = pairwise_sq_distances(inputs);
  std::vector<double> scores(m);
  for (std::size_t i = 0; i < m; ++i) {
    scores[i] = score_from_row(dist, m, i, neighbors);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < m; ++i) {
    if (scores[i] < scores[best]) best = i;  // ties keep the lowest index
  }
  return AggregationOutcome{inputs[best], best, std::move(scores)};
}

AggregationOutcome aggregate(const AggregationRule& rule,
                             const std::vector<GradientVector>& inputs) {
  check_inputs(inputs);
  validate_rule(rule, inputs.size());
  switch (rule.kind) {
    case RuleKind::kMean:
      return AggregationOutcome{mean_of(inputs), std::nullopt, std::nullopt};
    case RuleKind::kCoordinateWiseMedian:
      return AggregationOutcome{coordinate_median(inputs), std::nullopt,
                                std::nullopt};
    case RuleKind::kKrum:
      return krum(inputs, rule.declared_byzantine_count);
  }
  throw ConfigError("aggregate: unknown rule kind");
}

}  // namespace byzsim
