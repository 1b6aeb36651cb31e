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

#ifndef BYZSIM_CSV_HPP
#define BYZSIM_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "byzsim/simulator.hpp"

namespace byzsim {

/// 17 significant digits: round-trips 64-bit floats exactly.
std::string format_double(double value);

/// One row per iteration. Columns:
/// iteration,loss,grad_norm,inner_product,aggregate_norm,byzantine_count,
/// selected_index,selected_is_byzantine,diverged
/// selected_index is -1 when the rule is not Krum; selected_is_byzantine is
/// 0/1 for Krum and -1 otherwise.
void write_metrics_csv(std::ostream& out, const RunTrace& trace);

struct MetricsCsvRow {
  std::uint64_t iteration = 0;
  double loss = 0.0;
  double grad_norm = 0.0;
  double inner_product = 0.0;
  double aggregate_norm = 0.0;
  int byzantine_count = 0;
  int selected_index = -1;
  int selected_is_byzantine = -1;
  int diverged = 0;
};

std::vector<MetricsCsvRow> parse_metrics_csv(std::istream& in);

}  // namespace byzsim

#endif  // BYZSIM_CSV_HPP
