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

// Enumerative constant-weight code.
//
// A k-bit message is read as the integer B = sum_t b_t 2^t and mapped to the
// B-th weight-alpha vector of length L in the combinatorial number system:
// a codeword with ones at positions p_1 < ... < p_alpha has index
// sum_j binomial(p_j, j). encode()/decode() are the plain position-by-position
// walks; ConstantWeightCoder gives the same mapping with checkpointed
// binomial columns and is what bulk callers should use.

#ifndef CWCMARK_CODEC_HPP_
#define CWCMARK_CODEC_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace cwcmark {

using BigUint = mpz_class;

struct CodeParams {
  std::uint64_t k = 0;       // payload bits
  std::uint64_t alpha = 0;   // Hamming weight
  std::uint64_t length = 0;  // codeword length L

  // Throws DomainError unless k >= 1, 1 <= alpha <= L and
  // binomial(L, alpha) >= 2^k.
  void validate() const;

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

struct WatermarkMessage {
  std::vector<std::uint8_t> bits;  // b_0 first; b_0 is the least significant

  std::size_t size() const noexcept { return bits.size(); }
  friend bool operator==(const WatermarkMessage&, const WatermarkMessage&) = default;
};

struct Codeword {
  std::vector<std::uint8_t> bits;  // c_0 first

  std::size_t size() const noexcept { return bits.size(); }
  std::size_t weight() const noexcept;
  friend bool operator==(const Codeword&, const Codeword&) = default;
};

// n! / (r! (n-r)!), and 0 when r > n.
BigUint binomial(std::uint64_t n, std::uint64_t r);

BigUint bits_to_int(const WatermarkMessage& message);

// Throws RangeError if value >= 2^k.
WatermarkMessage int_to_bits(const BigUint& value, std::size_t k);

// Throws DomainError on a message whose length differs from params.k and
// CapacityError when its value is >= binomial(L, alpha).
Codeword encode(const WatermarkMessage& message, const CodeParams& params);
Codeword encode_index(const BigUint& index, const CodeParams& params);

// Throws MalformedCodewordError on wrong length or weight, RangeError when the
// reconstructed index does not fit in k bits.
WatermarkMessage decode(const Codeword& codeword, const CodeParams& params);

// Index of a weight-alpha codeword without the k-bit range check.
BigUint codeword_index(const Codeword& codeword, const CodeParams& params);

// Same mapping as encode()/decode(), with binomial(n, r) for every r <= alpha
// sampled every kCheckpointStride rows of n, so each lookup costs at most
// kCheckpointStride / 2 small-integer steps instead of a walk over all of L.
class ConstantWeightCoder {
 public:
  static constexpr std::uint64_t kCheckpointStride = 16;

  explicit ConstantWeightCoder(const CodeParams& params);

  const CodeParams& params() const noexcept { return params_; }
  const BigUint& capacity() const noexcept { return capacity_; }

  Codeword encode(const WatermarkMessage& message) const;
  Codeword encode_index(const BigUint& index) const;
  WatermarkMessage decode(const Codeword& codeword) const;
  BigUint index(const Codeword& codeword) const;

 private:
  // binomial(n, r) for 1 <= r <= alpha, n <= L.
  BigUint lookup(std::uint64_t n, std::uint64_t r) const;

  CodeParams params_;
  BigUint capacity_;
  // columns_[r - 1][s] = binomial(s * kCheckpointStride, r)
  std::vector<std::vector<BigUint>> columns_;
};

enum class SizingRule {
  // Smallest L with binomial(L, alpha) >= 2^k.
  kMinimal,
  // Smallest L with (L - alpha)^alpha / alpha! >= 2^k. Since
  // binomial(L, alpha) >= (L - alpha + 1)^alpha / alpha!, this never
  // undersizes the code; it is how the commonly quoted parameter tables
  // were sized.
  kProductBound,
};

struct ParamReport {
  CodeParams params;
  double tolerance = 0.0;          // tolerable pruning rate 1 - alpha / L
  std::uint64_t capacity_bits = 0;  // floor(log2(binomial(L, alpha)))
  bool upper_bound_holds = false;   // binomial(L, alpha) < 2^(k+1)
};

double pruning_tolerance(const CodeParams& params);

ParamReport describe_params(const CodeParams& params);

// Throws DomainError if k == 0 or alpha == 0, RangeError if the resulting L
// would exceed 2^62.
ParamReport find_params(std::uint64_t k, std::uint64_t alpha,
                        SizingRule rule = SizingRule::kMinimal);

// Largest alpha whose code still tolerates pruning at rate >= target, i.e.
// the shortest code meeting the target. std::nullopt when no alpha qualifies.
std::optional<ParamReport> find_params_for_tolerance(
    std::uint64_t k, double target, SizingRule rule = SizingRule::kMinimal);

}  // namespace cwcmark

#endif  // CWCMARK_CODEC_HPP_
