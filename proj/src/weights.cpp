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

#include "cwcmark/weights.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "cwcmark/errors.hpp"

namespace cwcmark {

WeightVector::WeightVector(std::vector<float> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("weight vector must hold at least one value");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("weight " + std::to_string(i) + " is not finite");
    }
  }
}

bool bit_identical(const WeightVector& a, const WeightVector& b) noexcept {
  return a.size() == b.size() &&
         std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(float)) == 0;
}

}  // namespace cwcmark
