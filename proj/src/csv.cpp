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

#include "byzsim/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "byzsim/errors.hpp"

namespace byzsim {

namespace {
constexpr char kHeader[] =
    "iteration,loss,grad_norm,inner_product,aggregate_norm,byzantine_count,"
    "selected_index,selected_is_byzantine,diverged";
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_metrics_csv(std::ostream& out, const RunTrace& trace) {
  out << kHeader << "\n";
  for (const IterationMetrics& m : trace.metrics) {
    out << m.iteration << ',' << format_double(m.loss) << ','
        << format_double(m.grad_norm) << ',' << format_double(m.inner_product)
        << ',' << format_double(m.aggregate_norm) << ','
        << m.byzantine_indices.size() << ',';
    if (m.selected_index) {
      out << static_cast<long long>(*m.selected_index);
    } else {
      out << -1;
    }
    out << ',';
    if (m.selected_is_byzantine) {
      out << (*m.selected_is_byzantine ? 1 : 0);
    } else {
      out << -1;
    }
    out << ',' << (m.diverged ? 1 : 0) << "\n";
  }
}

std::vector<MetricsCsvRow> parse_metrics_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw ConfigError("metrics CSV: missing or unexpected header");
  }
  std::vector<MetricsCsvRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 9) {
      throw ConfigError("metrics CSV line " + std::to_string(line_no) +
                        ": expected 9 fields, got " +
                        std::to_string(fields.size()));
    }
    MetricsCsvRow row;
    row.iteration = std::stoull(fields[0]);
    row.loss = std::stod(fields[1]);
    row.grad_norm = std::stod(fields[2]);
    row.inner_product = std::stod(fields[3]);
    row.aggregate_norm = std::stod(fields[4]);
    row.byzantine_count = std::stoi(fields[5]);
    row.selected_index = std::stoi(fields[6]);
    row.selected_is_byzantine = std::stoi(fields[7]);
    row.diverged = std::stoi(fields[8]);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace byzsim
