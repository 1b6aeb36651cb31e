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

#include "byzsim/attacks.hpp"

#include <algorithm>
#include <cmath>

#include "byzsim/errors.hpp"

namespace byzsim {

std::optional<std::vector<GradientVector>> craft(const AttackSpec& attack,
                                                 const OmniscientView& view,
                                                 int q) {
  if (q < 1) throw ConfigError("craft: q must be at least 1");
  if (view.correct_gradients.empty()) {
    throw ConfigError("craft: empty omniscient view");
  }
  if (!std::isfinite(attack.epsilon)) {
    throw NumericError("craft: non-finite epsilon");
  }
  if (!attack.active_at(view.iteration)) return std::nullopt;

  const GradientVector u =
      scale(mean_of(view.correct_gradients), -attack.epsilon);
  return std::vector<GradientVector>(static_cast<std::size_t>(q), u);
}

std::vector<CoordinatePlacement> median_attack_recipe(
    const OmniscientView& view) {
  if (view.correct_gradients.empty()) {
    throw ConfigError("median_attack_recipe: empty omniscient view");
  }
  const auto& correct = view.correct_gradients;
  const GradientVector mean = mean_of(correct);
  const std::size_t d = mean.dimension();

  std::vector<CoordinatePlacement> out(d);
  for (std::size_t j = 0; j < d; ++j) {
    double lo = correct.front()[j];
    double hi = lo;
    for (const auto& v : correct) {
      lo = std::min(lo, v[j]);
      hi = std::max(hi, v[j]);
    }
    CoordinatePlacement& p = out[j];
    p.correct_mean = mean[j];
    if (mean[j] > 0.0) {
      p.side = AttackSide::kBelow;
      p.threshold = lo;
    } else if (mean[j] < 0.0) {
      p.side = AttackSide::kAbove;
      p.threshold = hi;
    } else {
      p.side = AttackSide::kNeutral;
      p.threshold = 0.0;
    }
  }
  return out;
}

}  // namespace byzsim
