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

#include "cwcmark/codec.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "cwcmark/errors.hpp"

namespace cwcmark {
namespace {

constexpr std::uint64_t kMaxLength = std::uint64_t{1} << 62;

BigUint power_of_two(std::uint64_t k) {
  BigUint out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, k);
  return out;
}

// v * num / den where the division is known to be exact.
void scale_exact(BigUint& v, std::uint64_t num, std::uint64_t den) {
  mpz_mul_ui(v.get_mpz_t(), v.get_mpz_t(), num);
  mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), den);
}

// binomial(n + 1, r) from binomial(n, r).
void step_up(BigUint& v, std::uint64_t n, std::uint64_t r) {
  if (n + 1 < r) {
    v = 0;
  } else if (n + 1 == r) {
    v = 1;
  } else {
    scale_exact(v, n + 1, n + 1 - r);
  }
}

// binomial(n - 1, r) from binomial(n, r), n >= 1.
void step_down(BigUint& v, std::uint64_t n, std::uint64_t r) {
  if (n - 1 < r) {
    v = 0;
  } else {
    scale_exact(v, n - r, n);
  }
}

void check_shape(const Codeword& codeword, const CodeParams& params) {
  if (codeword.size() != params.length) {
    throw MalformedCodewordError("codeword has length " + std::to_string(codeword.size()) +
                                 ", expected " + std::to_string(params.length));
  }
  const std::size_t w = codeword.weight();
  if (w != params.alpha) {
    throw MalformedCodewordError("codeword has weight " + std::to_string(w) + ", expected " +
                                 std::to_string(params.alpha));
  }
}

void check_index(const BigUint& index, const BigUint& capacity) {
  if (index >= capacity) {
    throw CapacityError("message index " + index.get_str() + " exceeds code capacity " +
                        capacity.get_str());
  }
}

void check_message(const WatermarkMessage& message, const CodeParams& params) {
  if (message.size() != params.k) {
    throw DomainError("message has " + std::to_string(message.size()) + " bits, code expects " +
                      std::to_string(params.k));
  }
}

WatermarkMessage checked_bits(const BigUint& index, std::uint64_t k) {
  if (mpz_sizeinbase(index.get_mpz_t(), 2) > k && index != 0) {
    throw RangeError("decoded index " + index.get_str() + " does not fit in " +
                     std::to_string(k) + " bits");
  }
  return int_to_bits(index, k);
}

// (L - alpha)^alpha >= alpha! * 2^k
bool product_bound_holds(std::uint64_t length, std::uint64_t alpha, const BigUint& rhs) {
  BigUint lhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), length - alpha, alpha);
  return lhs >= rhs;
}

}  // namespace

void CodeParams::validate() const {
  if (k < 1) throw DomainError("code parameter k must be at least 1");
  if (alpha < 1) throw DomainError("code parameter alpha must be at least 1");
  if (alpha > length) {
    throw DomainError("code parameter alpha=" + std::to_string(alpha) + " exceeds L=" +
                      std::to_string(length));
  }
  if (binomial(length, alpha) < power_of_two(k)) {
    throw DomainError("binomial(" + std::to_string(length) + ", " + std::to_string(alpha) +
                      ") < 2^" + std::to_string(k) + ": code cannot carry k bits");
  }
}

std::size_t Codeword::weight() const noexcept {
  return static_cast<std::size_t>(std::count_if(bits.begin(), bits.end(),
                                                [](std::uint8_t b) { return b != 0; }));
}

BigUint binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  BigUint out = 1;
  // After step i the accumulator holds binomial(n - r + i, i), always integral.
  for (std::uint64_t i = 1; i <= r; ++i) {
    scale_exact(out, n - r + i, i);
  }
  return out;
}

BigUint bits_to_int(const WatermarkMessage& message) {
  BigUint out = 0;
  for (std::size_t t = 0; t < message.bits.size(); ++t) {
    if (message.bits[t]) mpz_setbit(out.get_mpz_t(), t);
  }
  return out;
}

WatermarkMessage int_to_bits(const BigUint& value, std::size_t k) {
  if (value < 0) throw RangeError("negative value cannot be expanded to bits");
  if (value != 0 && mpz_sizeinbase(value.get_mpz_t(), 2) > k) {
    throw RangeError("value " + value.get_str() + " does not fit in " + std::to_string(k) +
                     " bits");
  }
  WatermarkMessage out;
  out.bits.resize(k);
  for (std::size_t t = 0; t < k; ++t) {
    out.bits[t] = static_cast<std::uint8_t>(mpz_tstbit(value.get_mpz_t(), t));
  }
  return out;
}

Codeword encode(const WatermarkMessage& message, const CodeParams& params) {
  params.validate();
  check_message(message, params);
  return encode_index(bits_to_int(message), params);
}

Codeword encode_index(const BigUint& index, const CodeParams& params) {
  params.validate();
  const std::uint64_t length = params.length;
  check_index(index, binomial(length, params.alpha));

  Codeword out;
  out.bits.assign(length, 0);
  BigUint rest = index;
  std::uint64_t ones_left = params.alpha;
  // current == binomial(n, ones_left) with n = L - t - 1
  BigUint current = binomial(length - 1, ones_left);
  for (std::uint64_t t = 0; t < length; ++t) {
    const std::uint64_t n = length - t - 1;
    const bool one = rest >= current;
    if (one) {
      out.bits[n] = 1;
      rest -= current;
    }
    if (n == 0) break;
    if (one) {
      // binomial(n - 1, l - 1) = binomial(n, l) * l / n
      if (ones_left == 0 || current == 0) {
        current = binomial(n - 1, ones_left - 1);
      } else {
        scale_exact(current, ones_left, n);
      }
      --ones_left;
    } else {
      step_down(current, n, ones_left);
    }
  }
  return out;
}

BigUint codeword_index(const Codeword& codeword, const CodeParams& params) {
  check_shape(codeword, params);
  BigUint index = 0;
  std::uint64_t ones = 0;
  // next == binomial(t, ones + 1), the term added if c_t = 1
  BigUint next = 0;
  const std::uint64_t length = params.length;
  for (std::uint64_t t = 0; t < length; ++t) {
    if (codeword.bits[t]) {
      ++ones;
      index += next;
      // binomial(t + 1, ones + 1) = binomial(t, ones) * (t + 1) / (ones + 1)
      if (next == 0) {
        next = binomial(t + 1, ones + 1);
      } else {
        scale_exact(next, t + 1, ones + 1);
      }
    } else {
      step_up(next, t, ones + 1);
    }
  }
  return index;
}

WatermarkMessage decode(const Codeword& codeword, const CodeParams& params) {
  params.validate();
  return checked_bits(codeword_index(codeword, params), params.k);
}

ConstantWeightCoder::ConstantWeightCoder(const CodeParams& params) : params_(params) {
  params_.validate();
  capacity_ = binomial(params_.length, params_.alpha);
  const std::uint64_t rows = params_.length / kCheckpointStride + 1;
  columns_.resize(params_.alpha);
  for (std::uint64_t r = 1; r <= params_.alpha; ++r) {
    auto& column = columns_[r - 1];
    column.reserve(rows);
    BigUint v = 0;  // binomial(0, r)
    std::uint64_t n = 0;
    for (std::uint64_t s = 0; s < rows; ++s) {
      const std::uint64_t target = s * kCheckpointStride;
      while (n < target) {
        step_up(v, n, r);
        ++n;
      }
      column.push_back(v);
    }
  }
}

BigUint ConstantWeightCoder::lookup(std::uint64_t n, std::uint64_t r) const {
  if (n < r) return 0;
  const auto& column = columns_[r - 1];
  std::uint64_t s = (n + kCheckpointStride / 2) / kCheckpointStride;
  s = std::min<std::uint64_t>(s, column.size() - 1);
  std::uint64_t m = s * kCheckpointStride;
  BigUint v = column[s];
  if (m < r) {
    m = r;
    v = 1;
  }
  while (m < n) {
    step_up(v, m, r);
    ++m;
  }
  while (m > n) {
    step_down(v, m, r);
    --m;
  }
  return v;
}

Codeword ConstantWeightCoder::encode(const WatermarkMessage& message) const {
  check_message(message, params_);
  return encode_index(bits_to_int(message));
}

Codeword ConstantWeightCoder::encode_index(const BigUint& index) const {
  check_index(index, capacity_);
  Codeword out;
  out.bits.assign(params_.length, 0);
  BigUint rest = index;
  // Exclusive upper bound on the next one's position.
  std::uint64_t upper = params_.length;
  for (std::uint64_t r = params_.alpha; r >= 1; --r) {
    // Largest n < upper with binomial(n, r) <= rest. binomial(r - 1, r) = 0
    // so n >= r - 1 always qualifies.
    const auto& column = columns_[r - 1];
    std::uint64_t lo = r - 1;
    {
      // Largest checkpoint row below upper whose value is <= rest.
      std::uint64_t s_hi = (upper - 1) / kCheckpointStride;
      std::uint64_t s_lo = lo / kCheckpointStride;
      while (s_lo < s_hi) {
        const std::uint64_t mid = s_lo + (s_hi - s_lo + 1) / 2;
        if (column[mid] <= rest) {
          s_lo = mid;
        } else {
          s_hi = mid - 1;
        }
      }
      if (s_lo * kCheckpointStride > lo) lo = s_lo * kCheckpointStride;
    }
    BigUint value = lo == r - 1 ? BigUint(0) : column[lo / kCheckpointStride];
    BigUint probe = value;
    std::uint64_t n = lo;
    while (n + 1 < upper) {
      step_up(probe, n, r);
      if (probe > rest) break;
      value = probe;
      ++n;
    }
    out.bits[n] = 1;
    rest -= value;
    upper = n;
  }
  return out;
}

BigUint ConstantWeightCoder::index(const Codeword& codeword) const {
  check_shape(codeword, params_);
  BigUint out = 0;
  std::uint64_t ones = 0;
  for (std::uint64_t t = 0; t < params_.length; ++t) {
    if (codeword.bits[t]) {
      ++ones;
      out += lookup(t, ones);
    }
  }
  return out;
}

WatermarkMessage ConstantWeightCoder::decode(const Codeword& codeword) const {
  return checked_bits(index(codeword), params_.k);
}

double pruning_tolerance(const CodeParams& params) {
  return 1.0 - static_cast<double>(params.alpha) / static_cast<double>(params.length);
}

ParamReport describe_params(const CodeParams& params) {
  params.validate();
  const BigUint capacity = binomial(params.length, params.alpha);
  ParamReport report;
  report.params = params;
  report.tolerance = pruning_tolerance(params);
  report.capacity_bits = mpz_sizeinbase(capacity.get_mpz_t(), 2) - 1;
  report.upper_bound_holds = capacity < power_of_two(params.k + 1);
  return report;
}

ParamReport find_params(std::uint64_t k, std::uint64_t alpha, SizingRule rule) {
  if (k < 1) throw DomainError("k must be at least 1");
  if (alpha < 1) throw DomainError("alpha must be at least 1");

  const BigUint target = power_of_two(k);
  BigUint product_rhs;
  if (rule == SizingRule::kProductBound) {
    mpz_fac_ui(product_rhs.get_mpz_t(), alpha);
    product_rhs *= target;
  }
  auto enough = [&](std::uint64_t length) {
    if (rule == SizingRule::kMinimal) return binomial(length, alpha) >= target;
    return product_bound_holds(length, alpha, product_rhs);
  };

  // enough(lo) is false, enough(hi) is true.
  std::uint64_t lo = alpha;
  std::uint64_t hi = alpha;
  if (enough(alpha)) {
    hi = alpha;
  } else {
    std::uint64_t step = std::max<std::uint64_t>(alpha, 1);
    for (;;) {
      if (hi > kMaxLength - step) {
        throw RangeError("code length for k=" + std::to_string(k) + ", alpha=" +
                         std::to_string(alpha) + " exceeds 2^62");
      }
      hi += step;
      if (enough(hi)) break;
      lo = hi;
      step *= 2;
    }
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (enough(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  return describe_params(CodeParams{k, alpha, hi});
}

std::optional<ParamReport> find_params_for_tolerance(std::uint64_t k, double target,
                                                     SizingRule rule) {
  if (k < 1) throw DomainError("k must be at least 1");
  if (!(target >= 0.0 && target < 1.0)) throw DomainError("target tolerance must lie in [0, 1)");
  std::optional<ParamReport> best;
  // Tolerance falls as alpha grows; stop at the first miss after a hit.
  for (std::uint64_t alpha = 1; alpha <= 4 * k + 4; ++alpha) {
    ParamReport report;
    try {
      report = find_params(k, alpha, rule);
    } catch (const RangeError&) {
      continue;
    }
    if (report.tolerance >= target) {
      best = report;
    } else if (best) {
      break;
    }
  }
  return best;
}

}  // namespace cwcmark
