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

#ifndef BYZSIM_CONFIG_HPP
#define BYZSIM_CONFIG_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "byzsim/simulator.hpp"

namespace byzsim {

/// Parameters for the `check` subcommand: the gradient expectation g for the
/// Monte-Carlo tolerance verdict (a scalar value is replicated across the
/// problem dimension) and the trial count.
struct CheckSpec {
  GradientVector g;
  std::uint64_t trials = 10000;
};

struct ParsedConfig {
  ExperimentConfig experiment;
  std::optional<CheckSpec> check;
};

/// Parses the INI-style experiment config. Unknown sections or keys are
/// errors naming the offending key and line; all ExperimentConfig invariants
/// are re-validated after the parse.
ParsedConfig parse_config(std::istream& in, const std::string& source_name);

ParsedConfig load_config(const std::string& path);

}  // namespace byzsim

#endif  // BYZSIM_CONFIG_HPP
