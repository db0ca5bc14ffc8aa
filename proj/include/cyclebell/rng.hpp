// Copyright 2026 The Cyclebell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CYCLEBELL_RNG_HPP
#define CYCLEBELL_RNG_HPP

#include <cstdint>
#include <optional>

namespace cyclebell {

/// splitmix64-based stream: fast, seedable, and good enough for Monte Carlo.
class RngStream {
 public:
  explicit RngStream(uint64_t state) : state_(state) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Draws one uniform iff p > 0; on an event, returns the draw rescaled to
  /// [0, 1) so a channel element can be selected without a second draw.
  std::optional<double> event(double p) {
    if (p <= 0) return std::nullopt;
    double u = next_double();
    if (u >= p) return std::nullopt;
    return u / p;
  }

  /// Uniform integer in [0, m).
  int uniform_int(int m) { return static_cast<int>(next_u64() % static_cast<uint64_t>(m)); }

 private:
  uint64_t state_;
};

/// Hierarchical, reproducible stream factory: identical (seed, ids) give
/// identical sequences, and distinct shots get independent streams, so work
/// can be distributed in any order.
class TrajectoryRng {
 public:
  explicit TrajectoryRng(uint64_t seed) : seed_(seed) {}

  uint64_t seed() const { return seed_; }

  RngStream stream(uint64_t experiment, uint64_t setting = 0, uint64_t shot = 0) const {
    uint64_t s = mix(mix(mix(mix(seed_) ^ experiment) ^ setting) ^ shot);
    return RngStream(s);
  }

 private:
  static uint64_t mix(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  uint64_t seed_;
};

}  // namespace cyclebell

#endif
