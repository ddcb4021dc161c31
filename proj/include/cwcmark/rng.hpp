// Copyright 2026 The cwcmark Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// SplitMix64 generator and the small set of draws built on it. Every stream
// derived from it is specified down to the u64 level so position lists and
// synthetic models can be reproduced by other implementations.

#ifndef CWCMARK_RNG_HPP_
#define CWCMARK_RNG_HPP_

#include <cstdint>

namespace cwcmark {

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection: draws below (2^64 - bound) mod bound
  // are discarded, the survivor is reduced mod bound. bound must be > 0.
  constexpr std::uint64_t uniform(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t r = next();
    while (r < threshold) r = next();
    return r % bound;
  }

  // (next() >> 11) * 2^-53, in [0, 1).
  constexpr double unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// First output of a SplitMix64 seeded with x.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept { return SplitMix64(x).next(); }

// Standard normal deviates by Box-Muller. Each pair consumes two draws,
// u1 = 1 - unit() in (0, 1] then u2 = unit(), and yields
// r cos(2 pi u2) followed by r sin(2 pi u2) with r = sqrt(-2 ln u1).
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) noexcept : rng_(seed) {}

  double next() noexcept;

 private:
  SplitMix64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cwcmark

#endif  // CWCMARK_RNG_HPP_
