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

#include "cwcmark/watermark.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "cwcmark/errors.hpp"
#include "cwcmark/rng.hpp"

namespace cwcmark {
namespace {

void check_ratio(std::uint64_t n, std::uint64_t total, RatioPolicy policy) {
  if (policy == RatioPolicy::kEnforce && total > n / 100) {
    throw PolicyError("embedding " + std::to_string(total) + " positions into " +
                      std::to_string(n) +
                      " weights exceeds the L <= N/100 secrecy ratio; override explicitly to "
                      "proceed");
  }
}

// Sparse view of the identity permutation of [0, n) under swaps.
class SparseShuffle {
 public:
  SparseShuffle(std::uint64_t key, std::uint64_t n) : rng_(key), n_(n) {}

  bool exhausted() const noexcept { return next_ >= n_; }

  // Performs Fisher-Yates step next_ and returns the element it fixes.
  std::uint64_t step() {
    const std::uint64_t i = next_++;
    const std::uint64_t j = i + rng_.uniform(n_ - i);
    const std::uint64_t vi = slot(i);
    const std::uint64_t vj = slot(j);
    swapped_[j] = vi;
    swapped_.erase(i);
    return vj;
  }

 private:
  std::uint64_t slot(std::uint64_t i) const {
    const auto it = swapped_.find(i);
    return it == swapped_.end() ? i : it->second;
  }

  SplitMix64 rng_;
  std::uint64_t n_;
  std::uint64_t next_ = 0;
  std::unordered_map<std::uint64_t, std::uint64_t> swapped_;
};

float round_up_to_float(double t) {
  float f = static_cast<float>(t);
  if (static_cast<double>(f) < t) f = std::nextafter(f, std::numeric_limits<float>::infinity());
  return f;
}

float round_down_to_float(double t) {
  float f = static_cast<float>(t);
  if (static_cast<double>(f) > t) f = std::nextafter(f, 0.0f);
  return f;
}

bool same_bits(float a, float b) noexcept { return std::memcmp(&a, &b, sizeof(float)) == 0; }

}  // namespace

void EmbedSpec::validate(std::uint64_t n) const {
  params.validate();
  thresholds.validate();
  if (positions.size() != params.length) {
    throw DomainError("spec lists " + std::to_string(positions.size()) + " positions, L is " +
                      std::to_string(params.length));
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(positions.size());
  for (std::uint64_t p : positions) {
    if (!seen.insert(p).second) {
      throw DomainError("position " + std::to_string(p) + " is listed twice");
    }
  }
  for (std::uint64_t p : positions) {
    if (p >= n) {
      throw ValidationError("position " + std::to_string(p) + " is outside a model of " +
                            std::to_string(n) + " weights");
    }
  }
}

std::vector<std::uint64_t> select_positions(std::uint64_t key, std::uint64_t n, std::uint64_t l,
                                            RatioPolicy policy) {
  if (l > n) {
    throw DomainError("cannot select " + std::to_string(l) + " positions from " +
                      std::to_string(n));
  }
  check_ratio(n, l, policy);
  SparseShuffle shuffle(key, n);
  std::vector<std::uint64_t> out;
  out.reserve(l);
  while (out.size() < l) out.push_back(shuffle.step());
  return out;
}

std::pair<WeightVector, EmbedReceipt> embed(const WeightVector& weights,
                                            const Codeword& codeword, const EmbedSpec& spec) {
  spec.validate(weights.size());
  if (codeword.size() != spec.params.length) {
    throw DomainError("codeword length " + std::to_string(codeword.size()) +
                      " does not match L=" + std::to_string(spec.params.length));
  }
  if (codeword.weight() != spec.params.alpha) {
    throw MalformedCodewordError("codeword weight " + std::to_string(codeword.weight()) +
                                 " does not match alpha=" + std::to_string(spec.params.alpha));
  }
  const float high = round_up_to_float(spec.thresholds.t1);
  const float low = round_down_to_float(spec.thresholds.t0);
  if (!std::isfinite(high) || !(low > 0.0f)) {
    throw DomainError("thresholds are not representable as binary32 weights");
  }
  const double t0 = spec.thresholds.t0;
  const double t1 = spec.thresholds.t1;

  std::vector<float> out = weights.to_vector();
  EmbedReceipt receipt{spec, 0, 0.0};
  for (std::size_t i = 0; i < spec.positions.size(); ++i) {
    float& w = out[spec.positions[i]];
    const double magnitude = std::fabs(static_cast<double>(w));
    const float sign = w >= 0.0f ? 1.0f : -1.0f;
    float updated = w;
    if (codeword.bits[i]) {
      if (magnitude < t1) updated = sign * high;
    } else {
      if (magnitude > t0) updated = sign * low;
    }
    if (!same_bits(updated, w)) {
      ++receipt.modified_count;
      receipt.max_perturbation =
          std::max(receipt.max_perturbation,
                   std::fabs(static_cast<double>(updated) - static_cast<double>(w)));
      w = updated;
    }
  }
  return {WeightVector(std::move(out)), std::move(receipt)};
}

std::vector<std::size_t> top_magnitudes(std::span<const float> values, std::size_t alpha) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  alpha = std::min(alpha, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(alpha),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      const float ma = std::fabs(values[a]);
                      const float mb = std::fabs(values[b]);
                      return ma != mb ? ma > mb : a < b;
                    });
  order.resize(alpha);
  std::sort(order.begin(), order.end());
  return order;
}

Codeword extract(const WeightVector& weights, const EmbedSpec& spec) {
  spec.validate(weights.size());
  std::vector<float> gathered;
  gathered.reserve(spec.positions.size());
  for (std::uint64_t p : spec.positions) gathered.push_back(weights[p]);
  Codeword out;
  out.bits.assign(gathered.size(), 0);
  for (std::size_t i : top_magnitudes(gathered, spec.params.alpha)) out.bits[i] = 1;
  return out;
}

std::pair<WeightVector, EmbedReceipt> embed_message(const WeightVector& weights,
                                                    const WatermarkMessage& message,
                                                    std::uint64_t key,
                                                    const ThresholdPair& thresholds,
                                                    const CodeParams& params,
                                                    RatioPolicy policy) {
  const Codeword codeword = encode(message, params);
  EmbedSpec spec{key, params, thresholds,
                 select_positions(key, weights.size(), params.length, policy)};
  return embed(weights, codeword, spec);
}

WatermarkMessage extract_message(const WeightVector& weights, const EmbedSpec& spec) {
  return decode(extract(weights, spec), spec.params);
}

std::vector<WatermarkMessage> split_blocks(std::span<const std::uint8_t> bits,
                                           std::uint64_t k_block) {
  if (bits.empty()) throw DomainError("cannot split an empty message");
  if (k_block == 0) throw DomainError("block size must be at least 1 bit");
  const std::uint64_t count = (bits.size() + k_block - 1) / k_block;
  std::vector<WatermarkMessage> out(count);
  for (std::uint64_t j = 0; j < count; ++j) {
    auto& block = out[j].bits;
    block.assign(k_block, 0);
    const std::uint64_t begin = j * k_block;
    const std::uint64_t end = std::min<std::uint64_t>(begin + k_block, bits.size());
    std::copy(bits.begin() + static_cast<std::ptrdiff_t>(begin),
              bits.begin() + static_cast<std::ptrdiff_t>(end), block.begin());
  }
  return out;
}

std::vector<std::uint8_t> join_blocks(std::span<const WatermarkMessage> blocks,
                                      std::uint64_t original_length) {
  std::vector<std::uint8_t> out;
  for (const auto& block : blocks) out.insert(out.end(), block.bits.begin(), block.bits.end());
  if (out.size() < original_length) {
    throw DomainError("blocks hold " + std::to_string(out.size()) + " bits, fewer than " +
                      std::to_string(original_length));
  }
  out.resize(original_length);
  return out;
}

std::uint64_t block_key(std::uint64_t key, std::uint64_t block) { return mix64(key ^ block); }

std::vector<std::vector<std::uint64_t>> select_block_positions(std::uint64_t key,
                                                               std::uint64_t n,
                                                               std::uint64_t l,
                                                               std::uint64_t blocks,
                                                               RatioPolicy policy) {
  if (blocks != 0 && l > n / blocks) {
    throw DomainError("cannot place " + std::to_string(blocks) + " disjoint blocks of " +
                      std::to_string(l) + " positions in " + std::to_string(n) + " weights");
  }
  check_ratio(n, l * blocks, policy);
  std::unordered_set<std::uint64_t> taken;
  std::vector<std::vector<std::uint64_t>> out(blocks);
  for (std::uint64_t j = 0; j < blocks; ++j) {
    SparseShuffle shuffle(block_key(key, j), n);
    auto& positions = out[j];
    positions.reserve(l);
    while (positions.size() < l) {
      // Cannot run dry: at most (blocks - 1) * l of n indices are taken.
      const std::uint64_t p = shuffle.step();
      if (!taken.contains(p)) positions.push_back(p);
    }
    taken.insert(positions.begin(), positions.end());
  }
  return out;
}

std::uint64_t BlockReceipt::modified_count() const noexcept {
  std::uint64_t total = 0;
  for (const auto& b : blocks) total += b.modified_count;
  return total;
}

double BlockReceipt::max_perturbation() const noexcept {
  double out = 0.0;
  for (const auto& b : blocks) out = std::max(out, b.max_perturbation);
  return out;
}

std::pair<WeightVector, BlockReceipt> embed_blocks(const WeightVector& weights,
                                                   std::span<const std::uint8_t> bits,
                                                   std::uint64_t key,
                                                   const ThresholdPair& thresholds,
                                                   const CodeParams& params,
                                                   RatioPolicy policy) {
  const auto messages = split_blocks(bits, params.k);
  const auto layout =
      select_block_positions(key, weights.size(), params.length, messages.size(), policy);
  const ConstantWeightCoder coder(params);

  WeightVector current = weights;
  BlockReceipt receipt;
  receipt.message_bits = bits.size();
  for (std::size_t j = 0; j < messages.size(); ++j) {
    EmbedSpec spec{block_key(key, j), params, thresholds, layout[j]};
    auto [next, block_receipt] = embed(current, coder.encode(messages[j]), spec);
    current = std::move(next);
    receipt.blocks.push_back(std::move(block_receipt));
  }
  return {std::move(current), std::move(receipt)};
}

std::vector<std::uint8_t> extract_blocks(const WeightVector& weights,
                                         std::span<const EmbedSpec> blocks,
                                         std::uint64_t message_bits) {
  std::vector<WatermarkMessage> messages;
  messages.reserve(blocks.size());
  for (const auto& spec : blocks) messages.push_back(extract_message(weights, spec));
  return join_blocks(messages, message_bits);
}

}  // namespace cwcmark
