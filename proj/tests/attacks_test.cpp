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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cwcmark/attacks.hpp"
#include "cwcmark/errors.hpp"
#include "cwcmark/rng.hpp"
#include "cwcmark/watermark.hpp"

using namespace cwcmark;

TEST_CASE("prune worked example") {
  const WeightVector w({0.1f, -0.5f, 2.0f, -3.0f});
  const auto [pruned, spec] = prune(w, 0.5);
  CHECK(spec.p == 2);
  CHECK(spec.cutoff == 2.0f);
  CHECK(spec.zeroed == 2);
  CHECK(pruned.to_vector() == std::vector<float>{0.0f, 0.0f, 2.0f, -3.0f});

  const auto [untouched, none] = prune(w, 0.0);
  CHECK(none.zeroed == 0);
  CHECK(bit_identical(untouched, w));

  CHECK_THROWS_AS(prune(w, 1.0), DomainError);
  CHECK_THROWS_AS(prune(w, -0.1), DomainError);
  // Ties at the cutoff survive.
  const auto tied = prune(WeightVector({1.0f, 1.0f, 1.0f, 1.0f}), 0.75).second;
  CHECK(tied.zeroed == 0);
}

TEST_CASE("pruned fraction on a large Gaussian host") {
  const WeightVector w = sample_gaussian_weights(1000000, 0.01, 8);
  const auto spec = prune(w, 0.9).second;
  CHECK(std::fabs(static_cast<double>(spec.zeroed) / 1e6 - 0.9) < 0.005);
  CHECK(magnitude_cutoff(w, 0.9) == spec.cutoff);
}

TEST_CASE("noise") {
  const WeightVector w = sample_gaussian_weights(1000, 1.0, 1);
  CHECK(bit_identical(add_noise(w, 0.0, 3), w));
  CHECK(bit_identical(add_noise(w, 0.1, 3), add_noise(w, 0.1, 3)));
  CHECK_FALSE(add_noise(w, 0.1, 3) == w);
  CHECK_THROWS_AS(add_noise(w, -1.0, 3), DomainError);
}

TEST_CASE("small noise leaves extracted codewords intact") {
  const double sigma = 0.01;
  const ThresholdPair th = design_thresholds(sigma, 0.95, TailMass::kTwoSided);
  const double noise = (th.t1 - th.t0) / 6.5;
  const CodeParams params = find_params(64, 10).params;
  std::uint64_t bit_errors = 0, bits = 0;
  SplitMix64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const WeightVector host = sample_gaussian_weights(50000, sigma, rng.next());
    WatermarkMessage m;
    for (int i = 0; i < 64; ++i) m.bits.push_back(rng.next() & 1);
    const auto [marked, receipt] = embed_message(host, m, rng.next(), th, params);
    const Codeword sent = encode(m, params);
    const Codeword got = extract(add_noise(marked, noise, rng.next()), receipt.spec);
    for (std::size_t t = 0; t < sent.size(); ++t) bit_errors += sent.bits[t] != got.bits[t];
    bits += sent.size();
  }
  CHECK(static_cast<double>(bit_errors) / bits < 1e-3);
}

TEST_CASE("targeted flip attack") {
  const double sigma = 0.01;
  const std::uint64_t n = 1000000;
  const WeightVector host = sample_gaussian_weights(n, sigma, 21);
  const CodeParams params{64, 10, 393};
  const ThresholdPair th = design_thresholds(sigma, 0.95, TailMass::kTwoSided);
  WatermarkMessage m;
  for (int i = 0; i < 64; ++i) m.bits.push_back(i % 3 == 0);
  const auto [marked, receipt] = embed_message(host, m, 1234, th, params);
  const Codeword sent = encode(m, params);

  FlipAttackConfig none;
  CHECK(bit_identical(targeted_flip_attack(marked, none).weights, marked));

  SUBCASE("suppression rarely lands on the mark") {
    FlipAttackConfig cfg{FlipStrategy::kSuppress, 1000, 5, 0.95, TailMass::kTwoSided};
    const auto result = targeted_flip_attack(marked, cfg);
    CHECK(result.touched.size() == 1000);
    const HitCount hits = count_hits(result.touched, receipt.spec.positions, sent);
    CHECK(static_cast<double>(hits.ones) / params.alpha < 0.05);
    CHECK(extract_message(result.weights, receipt.spec) == m);
  }
  SUBCASE("inflation with a small budget misses") {
    FlipAttackConfig cfg{FlipStrategy::kInflate, 1000, 5, 0.95, TailMass::kTwoSided};
    const auto result = targeted_flip_attack(marked, cfg);
    const HitCount hits = count_hits(result.touched, receipt.spec.positions, sent);
    CHECK(hits.zeros < 5);
  }
  SUBCASE("an unlimited budget destroys the mark") {
    // An attacker overestimating the design rate lifts every zero above T1.
    FlipAttackConfig cfg{FlipStrategy::kInflate, n, 5, 0.96, TailMass::kTwoSided};
    const auto result = targeted_flip_attack(marked, cfg);
    CHECK(extract(result.weights, receipt.spec) != sent);
  }
  CHECK_THROWS_AS(targeted_flip_attack(marked, FlipAttackConfig{FlipStrategy::kSuppress, n + 1}),
                  DomainError);
}
