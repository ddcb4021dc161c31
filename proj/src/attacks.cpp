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

#include "cwcmark/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "cwcmark/errors.hpp"
#include "cwcmark/rng.hpp"
#include "cwcmark/watermark.hpp"

namespace cwcmark {
namespace {

void check_rate(double rate) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw DomainError("pruning rate must lie in [0, 1), got " + std::to_string(rate));
  }
}

std::uint64_t prune_index(double rate, std::uint64_t n) {
  const auto p = static_cast<std::uint64_t>(std::floor(rate * static_cast<double>(n)));
  return std::min(p, n - 1);
}

}  // namespace

float magnitude_cutoff(const WeightVector& weights, double rate) {
  check_rate(rate);
  std::vector<float> magnitudes(weights.size());
  std::transform(weights.values().begin(), weights.values().end(), magnitudes.begin(),
                 [](float w) { return std::fabs(w); });
  const std::uint64_t p = prune_index(rate, weights.size());
  std::nth_element(magnitudes.begin(), magnitudes.begin() + static_cast<std::ptrdiff_t>(p),
                   magnitudes.end());
  return magnitudes[p];
}

std::pair<WeightVector, PruneSpec> prune(const WeightVector& weights, double rate) {
  PruneSpec spec;
  spec.rate = rate;
  spec.cutoff = magnitude_cutoff(weights, rate);
  spec.p = prune_index(rate, weights.size());
  std::vector<float> out = weights.to_vector();
  for (float& w : out) {
    if (std::fabs(w) < spec.cutoff) {
      w = 0.0f;
      ++spec.zeroed;
    }
  }
  return {WeightVector(std::move(out)), spec};
}

WeightVector add_noise(const WeightVector& weights, double sigma_noise, std::uint64_t seed) {
  if (!(sigma_noise >= 0.0 && std::isfinite(sigma_noise))) {
    throw DomainError("noise sigma must be non-negative, got " + std::to_string(sigma_noise));
  }
  if (sigma_noise == 0.0) return weights;
  NormalSampler normal(seed);
  std::vector<float> out = weights.to_vector();
  for (float& w : out) w = static_cast<float>(static_cast<double>(w) + sigma_noise * normal.next());
  return WeightVector(std::move(out));
}

FlipAttackResult targeted_flip_attack(const WeightVector& weights,
                                      const FlipAttackConfig& config) {
  const std::uint64_t n = weights.size();
  if (config.budget > n) {
    throw DomainError("attack budget " + std::to_string(config.budget) + " exceeds model size " +
                      std::to_string(n));
  }
  if (config.budget == 0) return {weights, {}};

  std::vector<float> out = weights.to_vector();
  std::vector<std::uint64_t> touched;
  touched.reserve(config.budget);

  if (config.strategy == FlipStrategy::kSuppress) {
    const float level = magnitude_cutoff(weights, config.assumed_rate);
    for (std::size_t i : top_magnitudes(weights.values(), config.budget)) {
      out[i] = out[i] >= 0.0f ? level : -level;
      touched.push_back(i);
    }
  } else {
    const double t1 = design_t1(estimate_sigma(weights), config.assumed_rate, config.mass);
    const float level = static_cast<float>(t1);
    std::vector<std::uint64_t> candidates;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (std::fabs(static_cast<double>(out[i])) < t1) candidates.push_back(i);
    }
    // Partial Fisher-Yates over the candidate list.
    SplitMix64 rng(config.seed);
    const std::uint64_t take = std::min<std::uint64_t>(config.budget, candidates.size());
    for (std::uint64_t i = 0; i < take; ++i) {
      const std::uint64_t j = i + rng.uniform(candidates.size() - i);
      std::swap(candidates[i], candidates[j]);
      const std::uint64_t idx = candidates[i];
      out[idx] = out[idx] >= 0.0f ? level : -level;
      touched.push_back(idx);
    }
  }
  return {WeightVector(std::move(out)), std::move(touched)};
}

HitCount count_hits(std::span<const std::uint64_t> touched,
                    std::span<const std::uint64_t> positions, const Codeword& codeword) {
  std::unordered_map<std::uint64_t, std::uint8_t> symbol;
  for (std::size_t i = 0; i < positions.size(); ++i) symbol.emplace(positions[i], codeword.bits[i]);
  HitCount out;
  for (std::uint64_t t : touched) {
    const auto it = symbol.find(t);
    if (it == symbol.end()) continue;
    if (it->second) {
      ++out.ones;
    } else {
      ++out.zeros;
    }
  }
  return out;
}

}  // namespace cwcmark
