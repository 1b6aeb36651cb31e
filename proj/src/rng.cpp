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

#include "byzsim/rng.hpp"

#include <cmath>

#include "byzsim/errors.hpp"

namespace byzsim {

std::uint64_t mix_u64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t purpose,
                          std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = mix_u64(master);
  s = mix_u64(s ^ purpose);
  s = mix_u64(s ^ a);
  s = mix_u64(s ^ b);
  return s;
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, StreamPurpose purpose,
                     std::uint64_t key_a, std::uint64_t key_b)
    : engine_(derive_seed(master_seed, static_cast<std::uint64_t>(purpose),
                          key_a, key_b)) {}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  // Box-Muller; u1 shifted into (0, 1] so the log is finite.
  const double u1 = 1.0 - next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 6.283185307179586476925286766559 * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

double RngStream::next_normal(double mean, double stddev) {
  return mean + stddev * next_normal();
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
  if (bound == 0) throw ConfigError("next_below: bound must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % bound;
}

}  // namespace byzsim
