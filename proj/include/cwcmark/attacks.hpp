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

// Attacks on a watermarked model: magnitude pruning and the auxiliary
// perturbations used to probe the T1 - T0 margin and key secrecy.

#ifndef CWCMARK_ATTACKS_HPP_
#define CWCMARK_ATTACKS_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cwcmark/codec.hpp"
#include "cwcmark/gaussian.hpp"
#include "cwcmark/weights.hpp"

namespace cwcmark {

struct PruneSpec {
  double rate = 0.0;
  std::uint64_t p = 0;         // floor(rate * N), index into sorted |w|
  float cutoff = 0.0f;         // p-th smallest magnitude (0-indexed)
  std::uint64_t zeroed = 0;    // weights with |w| < cutoff, set to 0
};

// Zeroes every weight with |w| strictly below the p-th smallest magnitude,
// p = floor(rate * N). Magnitudes equal to the cutoff survive, so zeroed can
// fall short of p on ties. Throws DomainError unless 0 <= rate < 1.
std::pair<WeightVector, PruneSpec> prune(const WeightVector& weights, double rate);

// p-th smallest |w| for p = floor(rate * N) without modifying anything.
float magnitude_cutoff(const WeightVector& weights, double rate);

// Adds i.i.d. N(0, sigma_noise^2) from NormalSampler(seed) to every weight.
// Throws DomainError for negative sigma_noise.
WeightVector add_noise(const WeightVector& weights, double sigma_noise, std::uint64_t seed);

enum class FlipStrategy {
  // Pull the `budget` largest magnitudes down to the attacker's pruning
  // cutoff, aiming at 1-positions.
  kSuppress,
  // Push `budget` random weights below the attacker's T1 estimate up to it,
  // aiming at 0-positions.
  kInflate,
};

// The attacker knows the scheme and has estimated sigma from the model but
// does not know the key.
struct FlipAttackConfig {
  FlipStrategy strategy = FlipStrategy::kSuppress;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  double assumed_rate = 0.95;  // design rate the attacker assumes
  TailMass mass = TailMass::kOneSided;
};

struct FlipAttackResult {
  WeightVector weights;
  std::vector<std::uint64_t> touched;  // model indices the attacker changed
};

// Throws DomainError if budget > N.
FlipAttackResult targeted_flip_attack(const WeightVector& weights, const FlipAttackConfig& config);

struct HitCount {
  std::uint64_t ones = 0;   // touched positions carrying a 1
  std::uint64_t zeros = 0;  // touched positions carrying a 0
};

HitCount count_hits(std::span<const std::uint64_t> touched,
                    std::span<const std::uint64_t> positions, const Codeword& codeword);

}  // namespace cwcmark

#endif  // CWCMARK_ATTACKS_HPP_
