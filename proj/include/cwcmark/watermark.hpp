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

// Keyed embedding of constant-weight codewords into host weights and their
// blind extraction.
//
// A codeword c of length L is carried by L keyed host positions. Positions
// with c_i = 1 are pushed to |w| >= T1, positions with c_i = 0 are pulled to
// |w| <= T0, signs are kept. Since T0 < T1 the alpha largest magnitudes at
// the positions are exactly the ones of c, and magnitude pruning with a
// cutoff below T1 only zeroes positions that were already zeros.

#ifndef CWCMARK_WATERMARK_HPP_
#define CWCMARK_WATERMARK_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cwcmark/codec.hpp"
#include "cwcmark/gaussian.hpp"
#include "cwcmark/weights.hpp"

namespace cwcmark {

// Whether select_positions enforces L <= N / 100.
enum class RatioPolicy { kEnforce, kOverride };

struct EmbedSpec {
  std::uint64_t key = 0;
  CodeParams params;
  ThresholdPair thresholds;
  std::vector<std::uint64_t> positions;  // selection order, |positions| = L

  // Throws DomainError on malformed params/thresholds, duplicate positions or
  // |positions| != L; ValidationError if a position is >= n.
  void validate(std::uint64_t n) const;

  friend bool operator==(const EmbedSpec&, const EmbedSpec&) = default;
};

struct EmbedReceipt {
  EmbedSpec spec;
  std::uint64_t modified_count = 0;  // positions whose stored value changed
  double max_perturbation = 0.0;     // max |w_after - w_before|
};

// Partial Fisher-Yates over [0, n): for i = 0 .. l-1, j = i + uniform(n - i)
// from SplitMix64(key), swap slots i and j, emit slot i.
// Throws DomainError if l > n, PolicyError if 100 * l > n under kEnforce.
std::vector<std::uint64_t> select_positions(std::uint64_t key, std::uint64_t n,
                                            std::uint64_t l,
                                            RatioPolicy policy = RatioPolicy::kEnforce);

// sgn(0) = +1. T1 is stored rounded away from zero to binary32 and T0
// rounded toward zero, so |w| >= T1 and |w| <= T0 hold for the stored floats.
std::pair<WeightVector, EmbedReceipt> embed(const WeightVector& weights,
                                            const Codeword& codeword, const EmbedSpec& spec);

// The alpha largest |w| at the spec positions become ones; equal magnitudes
// are ranked by position-list index, lower first.
Codeword extract(const WeightVector& weights, const EmbedSpec& spec);

// Indices (into values) of the alpha largest magnitudes, ties to the lower
// index; the result is sorted ascending.
std::vector<std::size_t> top_magnitudes(std::span<const float> values, std::size_t alpha);

// encode -> select_positions -> embed.
std::pair<WeightVector, EmbedReceipt> embed_message(const WeightVector& weights,
                                                    const WatermarkMessage& message,
                                                    std::uint64_t key,
                                                    const ThresholdPair& thresholds,
                                                    const CodeParams& params,
                                                    RatioPolicy policy = RatioPolicy::kEnforce);

// extract -> decode.
WatermarkMessage extract_message(const WeightVector& weights, const EmbedSpec& spec);

// ---- Block mode -----------------------------------------------------------

// ceil(len / k_block) blocks of k_block bits, the last one zero padded.
// Throws DomainError on an empty message or k_block == 0.
std::vector<WatermarkMessage> split_blocks(std::span<const std::uint8_t> bits,
                                           std::uint64_t k_block);

// Concatenates the blocks and drops padding beyond original_length.
std::vector<std::uint8_t> join_blocks(std::span<const WatermarkMessage> blocks,
                                      std::uint64_t original_length);

// Key of block j: mix64(key ^ j).
std::uint64_t block_key(std::uint64_t key, std::uint64_t block);

// Disjoint position lists, one per block. Block j runs the select_positions
// shuffle on block_key(key, j) and skips indices already taken by blocks
// 0 .. j-1, continuing the shuffle until it has l fresh ones. The ratio
// policy applies to the total l * blocks.
std::vector<std::vector<std::uint64_t>> select_block_positions(
    std::uint64_t key, std::uint64_t n, std::uint64_t l, std::uint64_t blocks,
    RatioPolicy policy = RatioPolicy::kEnforce);

struct BlockReceipt {
  std::uint64_t message_bits = 0;
  std::vector<EmbedReceipt> blocks;

  std::uint64_t modified_count() const noexcept;
  double max_perturbation() const noexcept;
};

// params.k is the block size.
std::pair<WeightVector, BlockReceipt> embed_blocks(const WeightVector& weights,
                                                   std::span<const std::uint8_t> bits,
                                                   std::uint64_t key,
                                                   const ThresholdPair& thresholds,
                                                   const CodeParams& params,
                                                   RatioPolicy policy = RatioPolicy::kEnforce);

std::vector<std::uint8_t> extract_blocks(const WeightVector& weights,
                                         std::span<const EmbedSpec> blocks,
                                         std::uint64_t message_bits);

}  // namespace cwcmark

#endif  // CWCMARK_WATERMARK_HPP_
