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

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "byzsim/config.hpp"
#include "byzsim/csv.hpp"
#include "byzsim/errors.hpp"
#include "byzsim/simulator.hpp"
#include "byzsim/tolerance.hpp"

namespace {

using namespace byzsim;

int cmd_run(const std::string& config_path, const std::string& output_path,
            std::optional<std::uint64_t> seed_override) {
  ParsedConfig parsed = load_config(config_path);
  if (seed_override) parsed.experiment.master_seed = *seed_override;

  const RunTrace trace = run_experiment(parsed.experiment);

  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + output_path);
  write_metrics_csv(out, trace);
  if (!out) throw ConfigError("failed writing output file: " + output_path);

  std::cout << "iterations: " << trace.metrics.size() << "\n"
            << "diverged: " << (trace.diverged ? "yes" : "no") << "\n"
            << "final_loss: "
            << format_double(trace.metrics.back().loss) << "\n";
  return 0;
}

const char* rule_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::kMean: return "mean";
    case RuleKind::kCoordinateWiseMedian: return "median";
    case RuleKind::kKrum: return "krum";
  }
  return "?";
}

int cmd_check(const std::string& config_path,
              std::optional<std::uint64_t> trials_override,
              std::optional<std::uint64_t> seed_override) {
  ParsedConfig parsed = load_config(config_path);
  const ExperimentConfig& cfg = parsed.experiment;
  if (!parsed.check) {
    throw ConfigError(config_path +
                      ": 'check' needs a [check] section with key 'g'");
  }
  if (cfg.problem.kind() != ProblemKind::kGaussianQuadratic) {
    throw ConfigError("check: only quadratic problems have a closed-form "
                      "gradient distribution");
  }
  const std::uint64_t seed = seed_override.value_or(cfg.master_seed);
  const std::uint64_t trials = trials_override.value_or(parsed.check->trials);

  // Per-worker minibatch gradients are Normal(g, (sigma^2/n) I).
  GradientDistribution dist;
  dist.mean = parsed.check->g;
  dist.sigma =
      cfg.problem.noise_sigma() / std::sqrt(static_cast<double>(cfg.n));

  std::cout << "rule: " << rule_name(cfg.rule.kind) << "\n"
            << "m: " << cfg.m << "\n"
            << "q: " << cfg.q << "\n"
            << "gradient_sigma: " << format_double(dist.sigma) << "\n"
            << "epsilon: " << format_double(cfg.attack.epsilon) << "\n"
            << "trials: " << trials << "\n";

  if (cfg.rule.kind == RuleKind::kCoordinateWiseMedian) {
    const ConditionResult cond =
        theorem1_condition(dist.mean, dist.sigma, cfg.m, cfg.q);
    std::cout << "median_attack_condition: " << (cond.holds ? "holds" : "fails")
              << "\n"
              << "median_attack_margin: " << format_double(cond.margin) << "\n";
  }
  if (cfg.rule.kind == RuleKind::kKrum &&
      cfg.attack.kind == AttackKind::kScaledNegativeMean &&
      cfg.attack.epsilon != 0.0) {
    const SizeCondition size =
        theorem2_condition(cfg.m, cfg.q, cfg.attack.epsilon);
    std::cout << "krum_attack_size_condition: "
              << (size.holds ? "holds" : "fails") << "\n"
              << "krum_attack_minimal_honest: " << size.minimal_honest_count
              << "\n";
    try {
      const Theorem2Instance inst =
          build_theorem2_instance(cfg.m, cfg.q, cfg.attack.epsilon,
                                  cfg.problem.dimension(), seed);
      const auto& r = inst.report;
      std::cout << "instance_radius_ok: " << (r.radius_ok ? "yes" : "no") << "\n"
                << "instance_distinct_ok: " << (r.distinct_ok ? "yes" : "no")
                << "\n"
                << "instance_epsilon_ok: " << (r.epsilon_ok ? "yes" : "no")
                << "\n"
                << "instance_size_ok: " << (r.size_ok ? "yes" : "no") << "\n"
                << "instance_krum_score_gap: "
                << format_double(r.krum_score_gap) << "\n"
                << "selected: "
                << (r.krum_score_gap > 0.0 ? "byzantine" : "correct") << "\n";
    } catch (const ConfigError& e) {
      std::cout << "instance: infeasible (" << e.what() << ")\n";
    }
  }

  AttackSpec attack = cfg.attack;
  attack.start_iteration = 0;  // the checker looks at one generic iteration
  const ToleranceVerdict verdict =
      check_tolerance(cfg.rule, attack, dist, cfg.m, cfg.q, trials, seed);
  std::cout << "inner_product: " << format_double(verdict.inner_product_with_g)
            << "\n"
            << "standard_error: " << format_double(verdict.standard_error)
            << "\n"
            << "tolerant: " << (verdict.tolerant ? "yes" : "no") << "\n";
  return 0;
}

int cmd_toy() {
  constexpr double kTol = 1e-12;
  bool ok = true;

  // Median toy: 3 correct gradients and 2 Byzantine ones below all of them.
  {
    const std::vector<GradientVector> inputs = {
        {-0.1}, {0.1}, {0.3}, {-4.0}, {-2.0}};
    const double med = coordinate_median(inputs)[0];
    const double expected = -0.1;
    std::cout << "Median toy: Median = " << med << " (expected " << expected
              << ")\n";
    ok = ok && std::abs(med - expected) <= kTol;

    const double correct_mean = mean_of({{-0.1}, {0.1}, {0.3}})[0];
    std::cout << "Median toy: correct mean = " << correct_mean
              << " (expected 0.1)\n";
    ok = ok && std::abs(correct_mean - 0.1) <= kTol;
  }

  // Krum toy: m = 9, q = 3.
  {
    const std::vector<GradientVector> inputs = {{-0.1}, {-0.1}, {-0.1},
                                                {0.0},  {0.02}, {0.14},
                                                {0.26}, {0.38}, {0.5}};
    const std::vector<double> expected_scores = {0.0244, 0.0244, 0.0244,
                                                 0.0304, 0.0436, 0.1060,
                                                 0.1440, 0.2160, 0.4320};
    const AggregationOutcome outcome = krum(inputs, 3);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const double score = (*outcome.scores)[i];
      std::cout << "Krum toy: KR(" << inputs[i][0] << ") = " << score
                << " (expected " << expected_scores[i] << ")\n";
      ok = ok && std::abs(score - expected_scores[i]) <= kTol;
    }
    const double selected = outcome.aggregate[0];
    std::cout << "Krum toy: Krum = " << selected << " (expected -0.1)\n";
    ok = ok && std::abs(selected - (-0.1)) <= kTol;
  }

  std::cout << (ok ? "toy examples: all match" : "toy examples: MISMATCH")
            << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Byzantine-tolerant synchronous SGD simulator and analysis "
               "toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::uint64_t> trials_override;

  CLI::App* run = app.add_subcommand(
      "run", "Run an experiment and write per-iteration metrics as CSV");
  run->add_option("--config", config_path, "Experiment config file")
      ->required();
  run->add_option("--out", output_path, "Output CSV path")->required();
  run->add_option("--seed", seed_override, "Override run.seed");

  CLI::App* check = app.add_subcommand(
      "check", "Monte-Carlo tolerance verdict and attack-condition report");
  check->add_option("--config", config_path, "Experiment config file")
      ->required();
  check->add_option("--trials", trials_override, "Override check.trials");
  check->add_option("--seed", seed_override, "Override run.seed");

  CLI::App* toy = app.add_subcommand(
      "toy", "Reproduce the two hand-computable aggregation examples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, output_path, seed_override);
    if (check->parsed()) {
      return cmd_check(config_path, trials_override, seed_override);
    }
    if (toy->parsed()) return cmd_toy();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
