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

#include "cwcmark/gaussian.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "cwcmark/errors.hpp"
#include "cwcmark/rng.hpp"

namespace cwcmark {
namespace {

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// Starting point for p <= 0.5 (Abramowitz & Stegun 26.2.23, |error| < 4.5e-4).
double rough_upper_quantile(double p) {
  const double t = std::sqrt(-2.0 * std::log(p));
  return t - (2.515517 + t * (0.802853 + t * 0.010328)) /
                 (1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308)));
}

}  // namespace

void ThresholdPair::validate() const {
  if (!(std::isfinite(t0) && std::isfinite(t1) && t0 > 0.0 && t0 < t1)) {
    throw DomainError("thresholds must satisfy 0 < T0 < T1 (got T0=" + std::to_string(t0) +
                      ", T1=" + std::to_string(t1) + ")");
  }
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("q_inverse needs 0 < p < 1, got " + std::to_string(p));
  }
  if (p == 0.5) return 0.0;
  if (p > 0.5) return -q_inverse(1.0 - p);

  // Root of q_function(x) - p on x > 0, where q_function is decreasing.
  // Newton steps are kept inside a shrinking bracket [lo, hi].
  double lo = 0.0;
  double hi = 40.0;
  double x = rough_upper_quantile(p);
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = q_function(x) - p;
    if (f == 0.0) return x;
    if (f > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    double next = x + f / normal_pdf(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(x) ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      return next;
    }
    x = next;
  }
  return x;
}

double design_t1(double sigma, double rate, TailMass mass) {
  if (!(sigma > 0.0 && std::isfinite(sigma))) {
    throw DomainError("sigma must be positive, got " + std::to_string(sigma));
  }
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw DomainError("pruning rate must lie in [0, 1), got " + std::to_string(rate));
  }
  const double tail = mass == TailMass::kOneSided ? 1.0 - rate : 0.5 * (1.0 - rate);
  if (tail >= 0.5) {
    throw DesignError(
        "design rate " + std::to_string(rate) +
        " gives T1 <= 0; choose a rate above 0.5 or set the thresholds explicitly");
  }
  return sigma * q_inverse(tail);
}

ThresholdPair design_thresholds(double sigma, double rate, TailMass mass, double t0_ratio) {
  if (!(t0_ratio > 0.0 && t0_ratio < 1.0)) {
    throw DomainError("T0/T1 ratio must lie in (0, 1), got " + std::to_string(t0_ratio));
  }
  const double t1 = design_t1(sigma, rate, mass);
  ThresholdPair out{t0_ratio * t1, t1};
  out.validate();
  return out;
}

double estimate_sigma(const WeightVector& weights) {
  double sum = 0.0;
  for (float w : weights.values()) sum += static_cast<double>(w) * w;
  return std::sqrt(sum / static_cast<double>(weights.size()));
}

WeightVector sample_gaussian_weights(std::uint64_t n, double sigma, std::uint64_t seed) {
  if (n == 0) throw DomainError("cannot sample an empty weight vector");
  if (!(sigma > 0.0 && std::isfinite(sigma))) {
    throw DomainError("sigma must be positive, got " + std::to_string(sigma));
  }
  NormalSampler normal(seed);
  std::vector<float> values(n);
  for (auto& v : values) v = static_cast<float>(sigma * normal.next());
  return WeightVector(std::move(values));
}

double NormalSampler::next() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - rng_.unit();
  const double u2 = rng_.unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace cwcmark
