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

#include <gmp.h>

#include "cwcmark/codec.hpp"
#include "cwcmark/errors.hpp"
#include "cwcmark/rng.hpp"

using namespace cwcmark;

namespace {

BigUint gmp_binomial(unsigned long n, unsigned long r) {
  BigUint out;
  mpz_bin_uiui(out.get_mpz_t(), n, r);
  return out;
}

BigUint pow2(unsigned k) { return BigUint(1) << k; }

Codeword word(std::initializer_list<std::uint8_t> bits) { return Codeword{bits}; }

}  // namespace

TEST_CASE("binomial small values") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(2, 1) == 2);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(10, 0) == 1);
  CHECK(binomial(10, 10) == 1);
}

TEST_CASE("binomial against gmp") {
  for (unsigned long n = 0; n <= 300; n += 7) {
    for (unsigned long r = 0; r <= n + 2; r += 3) CHECK(binomial(n, r) == gmp_binomial(n, r));
  }
  CHECK(binomial(13000, 200) == gmp_binomial(13000, 200));
  CHECK(binomial(12955, 127) == gmp_binomial(12955, 127));
}

TEST_CASE("C(393, 10) covers 64 bits, minimal length is 387") {
  CHECK(binomial(393, 10) >= pow2(64));
  CHECK(binomial(387, 10) >= pow2(64));
  CHECK(binomial(386, 10) < pow2(64));
  CHECK(find_params(64, 10).params.length == 387);
}

TEST_CASE("bits and integers") {
  const WatermarkMessage m{{1, 0, 1, 1}};
  CHECK(bits_to_int(m) == 13);
  CHECK(int_to_bits(13, 4) == m);
  CHECK_THROWS_AS(int_to_bits(4, 2), RangeError);
  CHECK(int_to_bits(3, 2).bits == std::vector<std::uint8_t>{1, 1});
}

TEST_CASE("k=1, alpha=1, L=3 worked example") {
  const CodeParams params{1, 1, 3};
  CHECK(encode(WatermarkMessage{{0}}, params) == word({1, 0, 0}));
  CHECK(encode(WatermarkMessage{{1}}, params) == word({0, 1, 0}));
  CHECK(decode(word({1, 0, 0}), params) == WatermarkMessage{{0}});
  CHECK(decode(word({0, 1, 0}), params) == WatermarkMessage{{1}});
  CHECK(codeword_index(word({0, 0, 1}), params) == 2);
  CHECK_THROWS_AS(decode(word({0, 0, 1}), params), RangeError);
  CHECK_THROWS_AS(decode(word({1, 1, 0}), params), MalformedCodewordError);
  CHECK_THROWS_AS(decode(word({1, 0}), params), MalformedCodewordError);
}

TEST_CASE("encode rejects bad input") {
  CHECK_THROWS_AS(encode(WatermarkMessage{{1, 0}}, CodeParams{1, 1, 3}), DomainError);
  CHECK_THROWS_AS(encode(WatermarkMessage{{1}}, CodeParams{1, 2, 2}), DomainError);
  CHECK_THROWS_AS(encode(WatermarkMessage{{1}}, CodeParams{1, 4, 3}), DomainError);
  CHECK_THROWS_AS(encode_index(3, CodeParams{1, 1, 3}), CapacityError);
  // 2 bits fit in C(4,1) = 4 exactly; index 3 is the last word.
  CHECK(encode_index(3, CodeParams{2, 1, 4}) == word({0, 0, 0, 1}));
}

TEST_CASE("encode walk places ones at colex positions") {
  // Index 0 is the lowest alpha positions, the largest index the highest.
  const CodeParams params{4, 3, 8};
  CHECK(encode_index(0, params) == word({1, 1, 1, 0, 0, 0, 0, 0}));
  CHECK(encode_index(binomial(8, 3) - 1, params) == word({0, 0, 0, 0, 0, 1, 1, 1}));
  // B = C(5,2) + C(2,1) = 12
  CHECK(codeword_index(word({0, 0, 1, 0, 0, 1, 0, 0}), CodeParams{4, 2, 8}) == 12);
  // B = C(6,3) + C(3,2) + C(0,1) = 23
  CHECK(codeword_index(word({1, 0, 0, 1, 0, 0, 1, 0}), params) == 23);
  CHECK(encode_index(23, params) == word({1, 0, 0, 1, 0, 0, 1, 0}));
}

TEST_CASE("checkpointed coder agrees with the plain walk") {
  const CodeParams params = find_params(256, 40).params;
  const ConstantWeightCoder coder(params);
  CHECK(coder.capacity() == binomial(params.length, params.alpha));
  SplitMix64 rng(7);
  for (int i = 0; i < 50; ++i) {
    WatermarkMessage m;
    for (int b = 0; b < 256; ++b) m.bits.push_back(rng.next() & 1);
    const Codeword c = encode(m, params);
    CHECK(coder.encode(m) == c);
    CHECK(coder.decode(c) == m);
  }
  CHECK(coder.encode_index(coder.capacity() - 1) == encode_index(coder.capacity() - 1, params));
}

TEST_CASE("find_params") {
  CHECK(find_params(1, 1).params == CodeParams{1, 1, 2});
  CHECK(find_params(1, 1).tolerance == doctest::Approx(0.5));

  const auto r64 = find_params(64, 10, SizingRule::kProductBound);
  CHECK(r64.params.length == 393);
  CHECK(r64.tolerance == doctest::Approx(0.9746).epsilon(1e-4));
  const auto r128 = find_params(128, 20, SizingRule::kProductBound);
  CHECK(r128.params.length == 722);
  CHECK(r128.tolerance == doctest::Approx(0.9723).epsilon(1e-4));

  CHECK(find_params(64, 10).capacity_bits == 64);
  CHECK(find_params(64, 10).upper_bound_holds);
  CHECK_THROWS_AS(find_params(0, 3), DomainError);
  CHECK_THROWS_AS(find_params(3, 0), DomainError);
  CHECK_THROWS_AS(find_params(100, 1), RangeError);
}

TEST_CASE("find_params_for_tolerance picks the shortest qualifying code") {
  const auto report = find_params_for_tolerance(64, 0.97);
  REQUIRE(report.has_value());
  CHECK(report->tolerance >= 0.97);
  const auto next = find_params(64, report->params.alpha + 1);
  CHECK(next.tolerance < 0.97);
  CHECK_FALSE(find_params_for_tolerance(8, 0.9999).has_value());
}
