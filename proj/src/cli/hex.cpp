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

#include "cwcmark/hex.hpp"

#include <string>

#include "cwcmark/errors.hpp"

namespace cwcmark {
namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::vector<std::uint8_t> bits_from_hex(std::string_view hex) {
  if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
  if (hex.empty()) throw DomainError("hex message is empty");
  std::vector<std::uint8_t> bits(4 * hex.size());
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const int v = hex_value(hex[d]);
    if (v < 0) throw DomainError("'" + std::string(1, hex[d]) + "' is not a hex digit");
    // Digit d (from the left) holds bits 4(D-1-d) .. 4(D-1-d)+3.
    const std::size_t base = 4 * (hex.size() - 1 - d);
    for (int b = 0; b < 4; ++b) bits[base + b] = static_cast<std::uint8_t>((v >> b) & 1);
  }
  return bits;
}

std::string bits_to_hex(std::span<const std::uint8_t> bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (bits.size() + 3) / 4;
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      const std::size_t t = 4 * d + b;
      if (t < bits.size() && bits[t]) v |= 1 << b;
    }
    out[digits - 1 - d] = kDigits[v];
  }
  return out;
}

WatermarkMessage message_from_hex(std::string_view hex) {
  return WatermarkMessage{bits_from_hex(hex)};
}

std::string message_to_hex(const WatermarkMessage& message) { return bits_to_hex(message.bits); }

Codeword codeword_from_string(std::string_view text) {
  Codeword out;
  out.bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw DomainError("codeword may only contain '0' and '1'");
    out.bits.push_back(static_cast<std::uint8_t>(c == '1'));
  }
  if (out.bits.empty()) throw DomainError("codeword is empty");
  return out;
}

std::string codeword_to_string(const Codeword& codeword) {
  std::string out;
  out.reserve(codeword.size());
  for (auto b : codeword.bits) out.push_back(b ? '1' : '0');
  return out;
}

}  // namespace cwcmark
