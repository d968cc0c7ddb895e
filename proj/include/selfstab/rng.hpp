// Copyright 2026 The selfstab Authors
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

#ifndef SELFSTAB_RNG_HPP_
#define SELFSTAB_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace selfstab {

// std::mt19937_64's output sequence is fixed by the standard, the
// <random> distributions are not. Everything that feeds a golden file draws
// through the helpers below instead.
using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Stream seed derived from a base seed and a tuple of coordinates.
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = splitmix64(base);
  for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p + 0x632BE59BD9B4E019ULL));
  return h;
}

/// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    std::uint64_t x = rng();
    if (x >= limit) return x % bound;
  }
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool coin(Rng& rng, double p) { return uniform_unit(rng) < p; }

}  // namespace selfstab

#endif  // SELFSTAB_RNG_HPP_
