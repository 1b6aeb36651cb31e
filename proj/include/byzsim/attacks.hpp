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

#ifndef BYZSIM_ATTACKS_HPP
#define BYZSIM_ATTACKS_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "byzsim/gradient_vector.hpp"

namespace byzsim {

enum class AttackKind { kNone, kScaledNegativeMean };

/// Omniscient attack descriptor. ScaledNegativeMean sends -epsilon times the
/// mean of the honest gradients from every Byzantine worker. epsilon > 0
/// points opposite the correct mean: large epsilon breaks Median, small
/// epsilon breaks Krum. Before start_iteration the workers behave honestly.
struct AttackSpec {
  AttackKind kind = AttackKind::kNone;
  double epsilon = 0.0;
  std::uint64_t start_iteration = 0;

  static constexpr std::uint64_t kNever =
      std::numeric_limits<std::uint64_t>::max();

  bool active_at(std::uint64_t iteration) const {
    return kind != AttackKind::kNone && iteration >= start_iteration;
  }
};

/// What the (colluding, omniscient) attacker sees in one iteration: the
/// honest gradients of the m-q non-Byzantine workers.
struct OmniscientView {
  std::vector<GradientVector> correct_gradients;
  std::uint64_t iteration = 0;
};

/// Crafts the q Byzantine gradients, or nullopt when the attack is inactive
/// (None, or before start_iteration) so the simulator keeps the honest draws.
std::optional<std::vector<GradientVector>> craft(const AttackSpec& attack,
                                                 const OmniscientView& view,
                                                 int q);

enum class AttackSide { kBelow, kAbove, kNeutral };

/// Per-coordinate placement a successful one-sided Median attack must clear.
struct CoordinatePlacement {
  double correct_mean = 0.0;
  AttackSide side = AttackSide::kNeutral;
  /// min of correct values when side is Below, max when Above.
  double threshold = 0.0;
};

/// Advisory diagnostic: where one-sided Byzantine values must land, per
/// coordinate, to drag the median past the correct range.
std::vector<CoordinatePlacement> median_attack_recipe(
    const OmniscientView& view);

}  // namespace byzsim

#endif  // BYZSIM_ATTACKS_HPP
