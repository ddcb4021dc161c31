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
#include <vector>

#include "cwcmark/attacks.hpp"
#include "cwcmark/errors.hpp"
#include "cwcmark/gaussian.hpp"
#include "cwcmark/rng.hpp"
#include "oracles.hpp"

using namespace cwcmark;

TEST_CASE("q_function values") {
  CHECK(q_function(0.0) == 0.5);
  CHECK(q_function(40.0) < 1e-300);
  CHECK(q_function(40.0) >= 0.0);
  CHECK(std::fabs(q_function(1.6448536269514722) - 0.05) < 1e-9);
  CHECK(std::fabs(oracle::upper_tail_simpson(1.6448536269514722) - 0.05) < 1e-9);
  for (double x : {-3.0, -1.0, 0.3, 1.0, 2.5, 4.0}) {
    CHECK(std::fabs(q_function(x) - oracle::upper_tail_simpson(x)) < 1e-10);
  }
}

TEST_CASE("q_inverse against bisection on the integrated tail") {
  CHECK(std::fabs(q_inverse(0.05) - oracle::upper_quantile_bisect(0.05)) < 1e-7);
  CHECK(std::fabs(q_inverse(0.5)) < 1e-12);
  for (double p : {1e-9, 1e-6, 1e-3, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 1 - 1e-6}) {
    CHECK(std::fabs(q_function(q_inverse(p)) - p) < 1e-10);
  }
  CHECK_THROWS_AS(q_inverse(0.0), DomainError);
  CHECK_THROWS_AS(q_inverse(1.0), DomainError);
  CHECK_THROWS_AS(q_inverse(std::nan("")), DomainError);
}

TEST_CASE("threshold design") {
  CHECK(design_t1(1.0, 0.95) == doctest::Approx(1.6448536269514722).epsilon(1e-10));
  CHECK(design_t1(1.0, 0.95, TailMass::kTwoSided) ==
        doctest::Approx(1.959963984540054).epsilon(1e-10));
  CHECK(design_t1(0.01, 0.9) == doctest::Approx(0.01 * 1.2815515655446004).epsilon(1e-10));
  CHECK_THROWS_AS(design_t1(1.0, 0.5), DesignError);
  CHECK_THROWS_AS(design_t1(1.0, 0.3), DesignError);
  CHECK(design_t1(1.0, 0.3, TailMass::kTwoSided) > 0.0);
  CHECK_THROWS_AS(design_t1(0.0, 0.9), DomainError);
  CHECK_THROWS_AS(design_t1(1.0, 1.0), DomainError);

  const ThresholdPair th = design_thresholds(2.0, 0.9, TailMass::kOneSided, 0.25);
  CHECK(th.t0 == doctest::Approx(0.25 * th.t1));
  CHECK_THROWS_AS(design_thresholds(1.0, 0.9, TailMass::kOneSided, 1.0), DomainError);
  CHECK_THROWS_AS((ThresholdPair{0.5, 0.5}.validate()), DomainError);
  CHECK_THROWS_AS((ThresholdPair{0.0, 0.5}.validate()), DomainError);
}

TEST_CASE("designed T1 against the empirical pruning cutoff") {
  const double sigma = 0.01;
  const double rate = 0.9746;
  const WeightVector w = sample_gaussian_weights(1000000, sigma, 11);
  const double cutoff = magnitude_cutoff(w, rate);
  const double two_sided = design_t1(sigma, rate, TailMass::kTwoSided);
  const double one_sided = design_t1(sigma, rate, TailMass::kOneSided);
  CHECK(std::fabs(two_sided - cutoff) / cutoff < 0.02);
  // The one-sided formula sits well below the magnitude quantile.
  CHECK((cutoff - one_sided) / cutoff > 0.1);
}

TEST_CASE("estimate_sigma") {
  CHECK(estimate_sigma(WeightVector({3.0f, -4.0f})) == doctest::Approx(std::sqrt(12.5)));
  CHECK(estimate_sigma(WeightVector({0.0f, 0.0f})) == 0.0);
  const WeightVector w = sample_gaussian_weights(1000000, 0.02, 5);
  CHECK(estimate_sigma(w) == doctest::Approx(0.02).epsilon(0.005));
}

TEST_CASE("sampler determinism and moments") {
  CHECK(bit_identical(sample_gaussian_weights(1000, 1.0, 3), sample_gaussian_weights(1000, 1.0, 3)));
  CHECK_FALSE(sample_gaussian_weights(1000, 1.0, 3) == sample_gaussian_weights(1000, 1.0, 4));
  NormalSampler s(99);
  const int n = 1000000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = s.next();
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  CHECK(std::fabs(mean) < 5.0 / std::sqrt(n));
  CHECK(std::fabs(sum2 / n - mean * mean - 1.0) < 0.01);
  CHECK_THROWS_AS(sample_gaussian_weights(0, 1.0, 1), DomainError);
  CHECK_THROWS_AS(sample_gaussian_weights(10, 0.0, 1), DomainError);
}

TEST_CASE("SplitMix64 reference outputs") {
  // Reference values of the published generator for seed 0.
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(mix64(0) == 0xe220a8397b1dcdafULL);
  SplitMix64 u(1);
  for (int i = 0; i < 1000; ++i) CHECK(u.uniform(7) < 7);
}
