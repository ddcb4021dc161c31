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

// Monte-Carlo robustness harness: generate a Gaussian host, embed a random
// payload, prune at each attack rate, extract and compare.

#ifndef CWCMARK_EXPERIMENT_HPP_
#define CWCMARK_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "cwcmark/codec.hpp"
#include "cwcmark/gaussian.hpp"
#include "cwcmark/watermark.hpp"

namespace cwcmark {

struct ExperimentConfig {
  std::uint64_t trials = 100;
  std::uint64_t n = 1'000'000;
  double sigma = 0.01;
  std::uint64_t k = 64;
  std::uint64_t alpha = 10;
  std::optional<std::uint64_t> length;  // default: find_params(k, alpha, rule)
  SizingRule rule = SizingRule::kMinimal;
  double design_rate = 0.95;
  std::vector<double> attack_rates{0.5, 0.8, 0.9, 0.94};
  TailMass mass = TailMass::kOneSided;
  double t0_ratio = 0.5;
  std::uint64_t seed = 0;
  RatioPolicy policy = RatioPolicy::kEnforce;
};

struct ExperimentRow {
  std::uint64_t trial_seed = 0;
  std::uint64_t n = 0;
  double sigma = 0.0;
  std::uint64_t k = 0;
  std::uint64_t alpha = 0;
  std::uint64_t length = 0;
  double design_rate = 0.0;
  double attack_rate = 0.0;
  std::uint64_t bit_errors = 0;
  bool recovered = false;
  float cutoff = 0.0f;
  double t1 = 0.0;
  std::uint64_t modified_count = 0;
};

// Code parameters the experiment will use.
CodeParams experiment_params(const ExperimentConfig& config);

// Trial t uses trial_seed = seed + t: the host is
// sample_gaussian_weights(n, sigma, trial_seed), and SplitMix64(mix64(trial_seed))
// yields the key followed by ceil(k / 64) words of payload bits (low bits
// first). Rows come out ordered by (trial, attack rate).
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

inline constexpr const char* kExperimentCsvHeader =
    "trial_seed,N,sigma,k,alpha,L,R_design,R_attack,bit_errors,recovered,cutoff,T1,"
    "modified_count";

void write_experiment_csv(std::ostream& out, std::span<const ExperimentRow> rows);

}  // namespace cwcmark

#endif  // CWCMARK_EXPERIMENT_HPP_
