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

// Text forms of payloads and codewords used on the command line.
//
// A hex payload is read as one big-endian number; its bit t (weight 2^t)
// becomes message bit b_t, and d hex digits give a 4d-bit message. So
// "0x01" is b_0 = 1 with b_1..b_7 = 0, and the index fed to the encoder is
// the hex value itself.

#ifndef CWCMARK_HEX_HPP_
#define CWCMARK_HEX_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cwcmark/codec.hpp"

namespace cwcmark {

// Accepts an optional 0x/0X prefix. Throws DomainError on an empty string or
// a non-hex digit.
std::vector<std::uint8_t> bits_from_hex(std::string_view hex);

// ceil(len / 4) lowercase digits, no prefix.
std::string bits_to_hex(std::span<const std::uint8_t> bits);

WatermarkMessage message_from_hex(std::string_view hex);
std::string message_to_hex(const WatermarkMessage& message);

// '0'/'1' characters, c_0 first.
Codeword codeword_from_string(std::string_view text);
std::string codeword_to_string(const Codeword& codeword);

}  // namespace cwcmark

#endif  // CWCMARK_HEX_HPP_
