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

#ifndef BYZSIM_RNG_HPP
#define BYZSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace byzsim {

/// Tags keeping unrelated random streams apart. Two streams with distinct
/// keys never share state, so evaluation order cannot change results.
enum class StreamPurpose : std::uint64_t {
  kWorkerGradient = 1,
  kByzantineSelection = 2,
  kModelInit = 3,
  kMonteCarloTrial = 4,
  kDatasetGeneration = 5,
  kInstanceJitter = 6,
};

/// Deterministic, splittable random stream keyed by
/// (master_seed, purpose, key_a, key_b). The engine (mt19937_64) and all
/// sampling routines here are fully specified, so identical keys produce
/// identical sequences on any platform. std::normal_distribution is
/// implementation-defined and deliberately not used.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, StreamPurpose purpose,
            std::uint64_t key_a = 0, std::uint64_t key_b = 0);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1), 53 bits of entropy.
  double next_unit();

  /// Standard normal via Box-Muller (pairs are cached).
  double next_normal();

  double next_normal(double mean, double stddev);

  /// Uniform integer in [0, bound), rejection-sampled (no modulo bias).
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// splitmix64 finalizer; also used to derive stream seeds.
std::uint64_t mix_u64(std::uint64_t x);

}  // namespace byzsim

#endif  // BYZSIM_RNG_HPP
