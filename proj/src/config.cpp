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

#include "byzsim/config.hpp"

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <vector>

#include "byzsim/errors.hpp"

namespace byzsim {
namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& source, int line,
                       const std::string& message) {
  throw ConfigError(source + ":" + std::to_string(line) + ": " + message);
}

class SectionReader {
 public:
  SectionReader(const std::string& source, const Section& section,
                const std::string& name)
      : source_(source), section_(section), name_(name) {}

  ~SectionReader() = default;

  bool has(const std::string& key) const { return section_.count(key) > 0; }

  std::string raw(const std::string& key) const {
    return section_.at(key).value;
  }

  double get_double(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return parse_double(key, raw(key));
  }

  std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const Entry& e = section_.at(key);
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(e.value, &pos);
    } catch (const std::exception&) {
      fail(source_, e.line, "key '" + name_ + "." + key +
                                "': expected an integer, got '" + e.value + "'");
    }
    if (pos != e.value.size()) {
      fail(source_, e.line, "key '" + name_ + "." + key +
                                "': trailing characters in '" + e.value + "'");
    }
    return v;
  }

  bool get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const Entry& e = section_.at(key);
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    fail(source_, e.line,
         "key '" + name_ + "." + key + "': expected true/false");
  }

  std::string get_string(const std::string& key,
                         const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
  }

  std::vector<double> get_vector(const std::string& key) const {
    const Entry& e = section_.at(key);
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      out.push_back(parse_double(key, trim(item)));
    }
    if (out.empty()) {
      fail(source_, e.line, "key '" + name_ + "." + key + "': empty vector");
    }
    return out;
  }

  void reject_unknown(const std::vector<std::string>& known) const {
    for (const auto& [key, entry] : section_) {
      bool ok = false;
      for (const auto& k : known) ok = ok || k == key;
      if (!ok) {
        fail(source_, entry.line,
             "unknown key '" + name_ + "." + key + "'");
      }
    }
  }

 private:
  double parse_double(const std::string& key, const std::string& text) const {
    const int line = section_.count(key) ? section_.at(key).line : 0;
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &pos);
    } catch (const std::exception&) {
      fail(source_, line, "key '" + name_ + "." + key +
                              "': expected a number, got '" + text + "'");
    }
    if (pos != text.size()) {
      fail(source_, line, "key '" + name_ + "." + key +
                              "': trailing characters in '" + text + "'");
    }
    return v;
  }

  const std::string& source_;
  const Section& section_;
  std::string name_;
};

}  // namespace

ParsedConfig parse_config(std::istream& in, const std::string& source_name) {
  std::map<std::string, Section> sections;
  std::string current;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    if (text.front() == '[') {
      if (text.back() != ']') fail(source_name, line_no, "malformed section header");
      current = trim(text.substr(1, text.size() - 2));
      if (current != "problem" && current != "cluster" && current != "rule" &&
          current != "attack" && current != "run" && current != "check") {
        fail(source_name, line_no, "unknown section '[" + current + "]'");
      }
      sections[current];
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(source_name, line_no, "expected 'key = value'");
    if (current.empty()) fail(source_name, line_no, "key outside any section");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) fail(source_name, line_no, "empty key");
    if (sections[current].count(key)) {
      fail(source_name, line_no, "duplicate key '" + current + "." + key + "'");
    }
    sections[current][key] = Entry{value, line_no};
  }

  SectionReader problem(source_name, sections["problem"], "problem");
  SectionReader cluster(source_name, sections["cluster"], "cluster");
  SectionReader rule(source_name, sections["rule"], "rule");
  SectionReader attack(source_name, sections["attack"], "attack");
  SectionReader run(source_name, sections["run"], "run");
  SectionReader check(source_name, sections["check"], "check");

  problem.reject_unknown(
      {"kind", "d", "sigma", "lambda", "n_points", "label_noise", "seed"});
  cluster.reject_unknown({"m", "q", "n"});
  rule.reject_unknown({"kind", "q"});
  attack.reject_unknown({"kind", "epsilon", "start_iteration"});
  run.reject_unknown({"T", "gamma", "gamma_decay", "gamma_decay_interval",
                      "seed", "x0", "x0_radius", "parallel_workers"});
  check.reject_unknown({"g", "trials"});

  ParsedConfig parsed;
  ExperimentConfig& cfg = parsed.experiment;

  cfg.master_seed = static_cast<std::uint64_t>(run.get_int("seed", 0));

  const std::string problem_kind = problem.get_string("kind", "quadratic");
  const std::size_t d =
      static_cast<std::size_t>(problem.get_int("d", 10));
  if (problem_kind == "quadratic") {
    cfg.problem = Problem::gaussian_quadratic(
        d, problem.get_double("sigma", 1.0), GradientVector::zeros(d));
  } else if (problem_kind == "logistic") {
    cfg.problem = Problem::logistic_regression(
        d, static_cast<std::size_t>(problem.get_int("n_points", 2000)),
        problem.get_double("lambda", 1e-3),
        problem.get_double("label_noise", 0.05),
        problem.has("seed")
            ? static_cast<std::uint64_t>(problem.get_int("seed", 0))
            : cfg.master_seed);
  } else {
    throw ConfigError(source_name + ": problem.kind must be 'quadratic' or "
                      "'logistic', got '" + problem_kind + "'");
  }

  cfg.m = static_cast<int>(cluster.get_int("m", 25));
  cfg.q = static_cast<int>(cluster.get_int("q", 0));
  cfg.n = static_cast<int>(cluster.get_int("n", 50));

  const std::string rule_kind = rule.get_string("kind", "mean");
  if (rule_kind == "mean") {
    cfg.rule.kind = RuleKind::kMean;
  } else if (rule_kind == "median") {
    cfg.rule.kind = RuleKind::kCoordinateWiseMedian;
  } else if (rule_kind == "krum") {
    cfg.rule.kind = RuleKind::kKrum;
  } else {
    throw ConfigError(source_name + ": rule.kind must be mean|median|krum, "
                      "got '" + rule_kind + "'");
  }
  cfg.rule.declared_byzantine_count =
      static_cast<int>(rule.get_int("q", cfg.q));

  const std::string attack_kind = attack.get_string("kind", "none");
  if (attack_kind == "none") {
    cfg.attack.kind = AttackKind::kNone;
  } else if (attack_kind == "scaled_negative_mean") {
    cfg.attack.kind = AttackKind::kScaledNegativeMean;
  } else {
    throw ConfigError(source_name +
                      ": attack.kind must be none|scaled_negative_mean, got '" +
                      attack_kind + "'");
  }
  cfg.attack.epsilon = attack.get_double("epsilon", 0.0);
  cfg.attack.start_iteration =
      static_cast<std::uint64_t>(attack.get_int("start_iteration", 0));

  cfg.T = static_cast<std::uint64_t>(run.get_int("T", 100));
  cfg.gamma.gamma = run.get_double("gamma", 0.1);
  cfg.gamma.decay_factor = run.get_double("gamma_decay", 1.0);
  cfg.gamma.decay_interval =
      static_cast<std::uint64_t>(run.get_int("gamma_decay_interval", 0));
  if (run.has("x0")) cfg.x0 = GradientVector(run.get_vector("x0"));
  cfg.x0_radius = run.get_double("x0_radius", 1.0);
  cfg.parallel_workers = run.get_bool("parallel_workers", false);

  cfg.validate();

  if (!sections["check"].empty()) {
    CheckSpec spec;
    if (!check.has("g")) {
      throw ConfigError(source_name + ": [check] section requires key 'g'");
    }
    std::vector<double> g = check.get_vector("g");
    if (g.size() == 1 && cfg.problem.dimension() > 1) {
      g.assign(cfg.problem.dimension(), g.front());
    }
    if (g.size() != cfg.problem.dimension()) {
      throw ConfigError(source_name +
                        ": check.g dimension does not match problem.d");
    }
    spec.g = GradientVector(std::move(g));
    spec.trials = static_cast<std::uint64_t>(check.get_int("trials", 10000));
    parsed.check = std::move(spec);
  }
  return parsed;
}

ParsedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in, path);
}

}  // namespace byzsim
