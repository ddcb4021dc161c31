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

// Flattened host-model weights.

#ifndef CWCMARK_WEIGHTS_HPP_
#define CWCMARK_WEIGHTS_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace cwcmark {

// N >= 1 finite binary32 values. Construction validates; the contents are
// immutable afterwards, operations return new vectors.
class WeightVector {
 public:
  // Throws DomainError on empty input or a non-finite value.
  explicit WeightVector(std::vector<float> values);

  std::size_t size() const noexcept { return values_.size(); }
  float operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const float> values() const noexcept { return values_; }

  // Copy of the values for building a modified vector.
  std::vector<float> to_vector() const { return values_; }

  // Value equality (so -0.0f == 0.0f).
  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<float> values_;
};

// Bit-for-bit equality of the stored binary32 patterns.
bool bit_identical(const WeightVector& a, const WeightVector& b) noexcept;

}  // namespace cwcmark

#endif  // CWCMARK_WEIGHTS_HPP_
