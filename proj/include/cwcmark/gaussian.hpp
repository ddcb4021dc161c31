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

// Gaussian weight model and threshold design.

#ifndef CWCMARK_GAUSSIAN_HPP_
#define CWCMARK_GAUSSIAN_HPP_

#include <cstdint>

#include "cwcmark/weights.hpp"

namespace cwcmark {

// Zero-mean normal model of host weights.
struct GaussianModel {
  double sigma = 1.0;  // must be > 0
};

struct ThresholdPair {
  double t0 = 0.0;
  double t1 = 0.0;

  // Throws DomainError unless 0 < t0 < t1, both finite.
  void validate() const;

  friend bool operator==(const ThresholdPair&, const ThresholdPair&) = default;
};

// Upper tail of the standard normal, P(Z > x).
double q_function(double x);

// x with q_function(x) = p to within 1e-10 absolute. Throws DomainError
// unless 0 < p < 1.
double q_inverse(double p);

// Which Gaussian mass the pruning rate is matched against.
enum class TailMass {
  // T1 = sigma * Qinv(1 - R): P(w <= T1) = R. This is the textbook design,
  // but pruning cuts on |w|, so only a fraction 2R - 1 of weights fall
  // below T1 in magnitude.
  kOneSided,
  // T1 = sigma * Qinv((1 - R) / 2): P(|w| < T1) = R, the actual magnitude
  // quantile a rate-R pruning reaches.
  kTwoSided,
};

// Throws DomainError for sigma <= 0 or rate outside [0, 1), DesignError when
// the design yields T1 <= 0 (one-sided design with R <= 0.5).
double design_t1(double sigma, double rate, TailMass mass = TailMass::kOneSided);

// T1 from design_t1 and T0 = t0_ratio * T1, 0 < t0_ratio < 1.
ThresholdPair design_thresholds(double sigma, double rate, TailMass mass = TailMass::kOneSided,
                                double t0_ratio = 0.5);

// sqrt(sum w^2 / N), the zero-mean maximum-likelihood sigma.
double estimate_sigma(const WeightVector& weights);

// n i.i.d. N(0, sigma^2) values from NormalSampler(seed), rounded to binary32.
// Throws DomainError for n == 0 or sigma <= 0.
WeightVector sample_gaussian_weights(std::uint64_t n, double sigma, std::uint64_t seed);

}  // namespace cwcmark

#endif  // CWCMARK_GAUSSIAN_HPP_
