// Copyright 2026 The hyponorm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>

namespace hyponorm {

/// SplitMix64: counter-based 64-bit generator (Steele, Lea & Flood).
/// The state advances by the golden-ratio increment and each output is a
/// finalizer mix of the state, so substreams can be derived by seeding from
/// a mixed (seed, index) pair. All constants are fixed here so any
/// implementation, in any language, reproduces the exact streams.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Seed for substream `index` of the stream rooted at `seed`.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    return mix(seed + kGamma * (index + 1));
  }

  std::uint64_t next_u64() { return mix(state_ += kGamma); }

  /// Uniform double in [0, 1) from the high 53 bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  /// Standard normal via Box-Muller; consumes exactly two uniforms and
  /// discards the sine branch, keeping the stream layout trivial to respec.
  double next_gaussian() {
    double u1 = next_double();
    const double u2 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Uniform integer in [0, bound) by multiply-shift; bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(next_u64()) * bound;
    return static_cast<std::uint64_t>(wide >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace hyponorm
