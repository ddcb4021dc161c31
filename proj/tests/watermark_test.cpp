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
#include <set>

#include "cwcmark/errors.hpp"
#include "cwcmark/gaussian.hpp"
#include "cwcmark/watermark.hpp"

using namespace cwcmark;

namespace {

EmbedSpec identity_spec(std::uint64_t alpha, std::uint64_t length, double t0, double t1) {
  EmbedSpec spec;
  spec.params = CodeParams{1, alpha, length};
  spec.thresholds = ThresholdPair{t0, t1};
  for (std::uint64_t i = 0; i < length; ++i) spec.positions.push_back(i);
  return spec;
}

}  // namespace

TEST_CASE("embed moves weights across the thresholds") {
  const WeightVector w({3.0f, -1.0f, 0.0f, 0.9f});
  const auto [marked, receipt] = embed(w, Codeword{{1, 1, 1, 0}}, identity_spec(3, 4, 0.5, 2.0));
  CHECK(marked.to_vector() == std::vector<float>{3.0f, -2.0f, 2.0f, 0.5f});
  CHECK(receipt.modified_count == 3);
  CHECK(receipt.max_perturbation == doctest::Approx(2.0));

  const EmbedSpec spec = identity_spec(2, 4, 0.5, 2.0);
  const auto second = embed(w, Codeword{{1, 1, 0, 0}}, spec).first;
  CHECK(second.to_vector() == std::vector<float>{3.0f, -2.0f, 0.0f, 0.5f});
  const auto third = embed(w, Codeword{{0, 1, 1, 0}}, spec).first;
  CHECK(third.to_vector() == std::vector<float>{0.5f, -2.0f, 2.0f, 0.5f});
}

TEST_CASE("embed rejects wrong weight and out-of-range positions") {
  const EmbedSpec spec = identity_spec(2, 4, 0.5, 2.0);
  const WeightVector w({1.0f, 1.0f, 1.0f, 1.0f});
  CHECK_THROWS_AS(embed(w, Codeword{{1, 1, 1, 0}}, spec), MalformedCodewordError);
  CHECK_THROWS_AS(embed(WeightVector({1.0f, 1.0f, 1.0f}), Codeword{{1, 1, 0, 0}}, spec),
                  ValidationError);
}

TEST_CASE("extract takes the largest magnitudes, ties to the earlier slot") {
  const EmbedSpec spec = identity_spec(2, 4, 0.5, 2.0);
  CHECK(extract(WeightVector({0.1f, -5.0f, 0.2f, 4.0f}), spec) == Codeword{{0, 1, 0, 1}});
  CHECK(extract(WeightVector({1.0f, 1.0f, 1.0f, 0.0f}), spec) == Codeword{{1, 1, 0, 0}});
  CHECK(extract(WeightVector({0.0f, 0.0f, 0.0f, 0.0f}), spec) == Codeword{{1, 1, 0, 0}});
  CHECK(extract(WeightVector({0.0f, -1.0f, 0.0f, 1.0f}), spec) == Codeword{{0, 1, 0, 1}});
}

TEST_CASE("positions follow the key") {
  const auto a = select_positions(1, 10000, 100);
  CHECK(a.size() == 100);
  CHECK(std::set<std::uint64_t>(a.begin(), a.end()).size() == 100);
  CHECK(std::all_of(a.begin(), a.end(), [](auto p) { return p < 10000; }));
  CHECK(select_positions(1, 10000, 100) == a);
  CHECK(select_positions(2, 10000, 100) != a);

  auto all = select_positions(5, 50, 50, RatioPolicy::kOverride);
  std::sort(all.begin(), all.end());
  for (std::uint64_t i = 0; i < 50; ++i) CHECK(all[i] == i);

  CHECK_THROWS_AS(select_positions(1, 1000, 11), PolicyError);
  CHECK_NOTHROW(select_positions(1, 1000, 10));
  CHECK_NOTHROW(select_positions(1, 1000, 11, RatioPolicy::kOverride));
  CHECK_THROWS_AS(select_positions(1, 10, 11, RatioPolicy::kOverride), DomainError);
}

TEST_CASE("message pipeline") {
  const WeightVector host = sample_gaussian_weights(100000, 0.01, 1);
  const CodeParams params = find_params(64, 10).params;
  const ThresholdPair th = design_thresholds(0.01, 0.95, TailMass::kTwoSided);
  WatermarkMessage m;
  for (int i = 0; i < 64; ++i) m.bits.push_back((i * 7 + 3) % 5 < 2);
  const auto [marked, receipt] = embed_message(host, m, 42, th, params);
  CHECK(receipt.modified_count > 0);
  CHECK(receipt.spec.positions == select_positions(42, host.size(), params.length));
  CHECK(extract_message(marked, receipt.spec) == m);
  CHECK(receipt.max_perturbation > 0.0);
}

TEST_CASE("blocks") {
  const std::vector<std::uint8_t> bits{1, 0, 1, 1, 0, 0, 1};
  const auto blocks = split_blocks(bits, 3);
  REQUIRE(blocks.size() == 3);
  CHECK(blocks[2].bits == std::vector<std::uint8_t>{1, 0, 0});
  CHECK(join_blocks(blocks, bits.size()) == bits);
  CHECK_THROWS_AS(split_blocks({}, 3), DomainError);
  CHECK_THROWS_AS(split_blocks(bits, 0), DomainError);

  const auto lists = select_block_positions(9, 50000, 40, 5);
  std::set<std::uint64_t> seen;
  for (const auto& list : lists) {
    CHECK(list.size() == 40);
    seen.insert(list.begin(), list.end());
  }
  CHECK(seen.size() == 200);
  CHECK(lists[0] == select_positions(block_key(9, 0), 50000, 40));
  CHECK(block_key(9, 1) != block_key(9, 0));

  const WeightVector host = sample_gaussian_weights(200000, 0.01, 2);
  std::vector<std::uint8_t> payload(300);
  for (std::size_t i = 0; i < payload.size(); ++i) payload[i] = (i * i + 1) % 3 == 0;
  const CodeParams params = find_params(64, 10).params;
  const ThresholdPair th = design_thresholds(0.01, 0.95, TailMass::kTwoSided);
  const auto [marked, receipt] = embed_blocks(host, payload, 77, th, params);
  CHECK(receipt.blocks.size() == 5);
  CHECK(receipt.message_bits == 300);
  std::vector<EmbedSpec> specs;
  for (const auto& b : receipt.blocks) specs.push_back(b.spec);
  CHECK(extract_blocks(marked, specs, 300) == payload);
}
