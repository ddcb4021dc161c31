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

#include "cwcmark/experiment.hpp"

#include "cwcmark/attacks.hpp"
#include "cwcmark/errors.hpp"
#include "cwcmark/model_io.hpp"
#include "cwcmark/rng.hpp"

namespace cwcmark {

CodeParams experiment_params(const ExperimentConfig& config) {
  if (config.length) {
    CodeParams params{config.k, config.alpha, *config.length};
    params.validate();
    return params;
  }
  return find_params(config.k, config.alpha, config.rule).params;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  for (double rate : config.attack_rates) {
    if (!(rate >= 0.0 && rate < 1.0)) throw DomainError("attack rates must lie in [0, 1)");
  }
  const CodeParams params = experiment_params(config);
  const ConstantWeightCoder coder(params);
  const ThresholdPair thresholds =
      design_thresholds(config.sigma, config.design_rate, config.mass, config.t0_ratio);

  std::vector<ExperimentRow> rows;
  rows.reserve(config.trials * config.attack_rates.size());
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    const std::uint64_t trial_seed = config.seed + t;
    const WeightVector host = sample_gaussian_weights(config.n, config.sigma, trial_seed);

    SplitMix64 rng(mix64(trial_seed));
    const std::uint64_t key = rng.next();
    WatermarkMessage message;
    message.bits.resize(params.k);
    for (std::uint64_t word = 0; word * 64 < params.k; ++word) {
      const std::uint64_t bits = rng.next();
      for (std::uint64_t b = 0; b < 64 && word * 64 + b < params.k; ++b) {
        message.bits[word * 64 + b] = static_cast<std::uint8_t>((bits >> b) & 1);
      }
    }
    const BigUint index = bits_to_int(message);

    EmbedSpec spec{key, params, thresholds,
                   select_positions(key, config.n, params.length, config.policy)};
    const auto [marked, receipt] = embed(host, coder.encode(message), spec);

    for (double rate : config.attack_rates) {
      const auto [attacked, prune_spec] = prune(marked, rate);
      const BigUint recovered = coder.index(extract(attacked, spec));
      // Bit errors over the low k bits of the recovered index.
      BigUint diff = recovered ^ index;
      mpz_fdiv_r_2exp(diff.get_mpz_t(), diff.get_mpz_t(), params.k);

      ExperimentRow row;
      row.trial_seed = trial_seed;
      row.n = config.n;
      row.sigma = config.sigma;
      row.k = params.k;
      row.alpha = params.alpha;
      row.length = params.length;
      row.design_rate = config.design_rate;
      row.attack_rate = rate;
      row.bit_errors = mpz_popcount(diff.get_mpz_t());
      row.recovered = recovered == index;
      row.cutoff = prune_spec.cutoff;
      row.t1 = thresholds.t1;
      row.modified_count = receipt.modified_count;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_experiment_csv(std::ostream& out, std::span<const ExperimentRow> rows) {
  out << kExperimentCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.trial_seed << ',' << r.n << ',' << format_double(r.sigma) << ',' << r.k << ','
        << r.alpha << ',' << r.length << ',' << format_double(r.design_rate) << ','
        << format_double(r.attack_rate) << ',' << r.bit_errors << ','
        << (r.recovered ? "yes" : "no") << ',' << format_double(r.cutoff) << ','
        << format_double(r.t1) << ',' << r.modified_count << '\n';
  }
}

}  // namespace cwcmark
