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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "byzsim/csv.hpp"
#include "byzsim/errors.hpp"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return BYZSIM_CLI_PATH; }

int run_cli(const std::string& args, const std::string& stdout_path) {
  const std::string cmd =
      std::string(cli_path()) + " " + args + " > " + stdout_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "byzsim_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

const char* kMedianAttackConfig = R"([problem]
kind = quadratic
d = 2
sigma = 1.0

[cluster]
m = 25
q = 12
n = 50

[rule]
kind = median

[attack]
kind = scaled_negative_mean
epsilon = 10.0
start_iteration = 20

[run]
T = 40
gamma = 0.05
seed = 7

[check]
g = 0.01
trials = 1000
)";

}  // namespace

TEST_CASE("toy subcommand reproduces the hand-worked examples") {
  const fs::path out = scratch_dir() / "toy.txt";
  CHECK(run_cli("toy", out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("Median = -0.1") != std::string::npos);
  CHECK(text.find("Krum = -0.1") != std::string::npos);
  CHECK(text.find("all match") != std::string::npos);
}

TEST_CASE("run subcommand writes a parseable metrics CSV") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "median.ini";
  const fs::path csv = dir / "median.csv";
  const fs::path log = dir / "run.txt";
  write_file(cfg, kMedianAttackConfig);

  CHECK(run_cli("run --config " + cfg.string() + " --out " + csv.string(),
                log.string()) == 0);
  CHECK(slurp(log).find("iterations: 40") != std::string::npos);

  std::ifstream in(csv);
  const auto rows = byzsim::parse_metrics_csv(in);
  REQUIRE(rows.size() == 40);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    CHECK(rows[t].iteration == t);
    CHECK(rows[t].byzantine_count == (t < 20 ? 0 : 12));
  }
}

TEST_CASE("run output is byte-identical for a fixed seed") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "repeat.ini";
  const fs::path a = dir / "a.csv";
  const fs::path b = dir / "b.csv";
  const fs::path c = dir / "c.csv";
  const fs::path log = dir / "repeat.txt";
  write_file(cfg, kMedianAttackConfig);

  REQUIRE(run_cli("run --config " + cfg.string() + " --out " + a.string(),
                  log.string()) == 0);
  REQUIRE(run_cli("run --config " + cfg.string() + " --out " + b.string(),
                  log.string()) == 0);
  CHECK(slurp(a) == slurp(b));

  // --seed overrides the config and changes the trace.
  REQUIRE(run_cli("run --seed 8 --config " + cfg.string() + " --out " +
                      c.string(),
                  log.string()) == 0);
  CHECK(slurp(a) != slurp(c));
}

TEST_CASE("check subcommand reports the attack condition and verdict") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "check.ini";
  const fs::path log = dir / "check.txt";
  write_file(cfg, kMedianAttackConfig);

  CHECK(run_cli("check --config " + cfg.string(), log.string()) == 0);
  const std::string text = slurp(log);
  CHECK(text.find("rule: median") != std::string::npos);
  // g = 0.01, per-worker sigma = 1/sqrt(50) ~ 0.141, threshold
  // 0.141/sqrt(12) ~ 0.041 > 0.01: the attack condition holds and the
  // verdict must be non-tolerant.
  CHECK(text.find("median_attack_condition: holds") != std::string::npos);
  CHECK(text.find("tolerant: no") != std::string::npos);
}

TEST_CASE("bad configs fail with a diagnostic and nonzero exit") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "bad.ini";
  const fs::path log = dir / "bad.txt";
  write_file(cfg, "[cluster]\nm = 9\nq = 3\nbogus_key = 1\n");

  const fs::path out_csv = dir / "bad.csv";
  CHECK(run_cli("run --config " + cfg.string() + " --out " + out_csv.string(),
                log.string()) != 0);
  const std::string text = slurp(log);
  CHECK(text.find("error:") != std::string::npos);
  CHECK(text.find("bogus_key") != std::string::npos);

  CHECK(run_cli("run --config " + (dir / "missing.ini").string() + " --out " +
                    out_csv.string(),
                log.string()) != 0);
}
