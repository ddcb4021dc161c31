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

// On-disk formats.
//
// Weight file, little-endian regardless of host:
//   bytes 0..3   "CWCW"
//   bytes 4..5   u16 version = 1
//   bytes 6..13  u64 n
//   bytes 14..   n binary32 values
//
// Spec file, UTF-8 text, one "name = value" per line, '#' starts a comment:
//   format = cwcmark-spec
//   version = 1
//   key = <u64>            k = ..   alpha = ..   L = ..
//   t0 = <double>          t1 = <double>   (shortest round-trip form)
//   sigma = <double>       design_rate = <double> | none
//   n = <u64>              message_bits = <u64>
//   layout = single | blocks                      blocks = <count>
//   positions.<j> = <space-separated indices>   for j = 0 .. blocks-1
// Fields are written in that order. Positions are stored explicitly so that
// extraction never re-derives them from the key.

#ifndef CWCMARK_MODEL_IO_HPP_
#define CWCMARK_MODEL_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cwcmark/codec.hpp"
#include "cwcmark/gaussian.hpp"
#include "cwcmark/watermark.hpp"
#include "cwcmark/weights.hpp"

namespace cwcmark {

inline constexpr char kWeightMagic[4] = {'C', 'W', 'C', 'W'};
inline constexpr std::uint16_t kWeightVersion = 1;
inline constexpr std::size_t kWeightHeaderBytes = 14;

std::string serialize_weights(const WeightVector& weights);
// Throws ParseError with kind kBadMagic, kBadVersion, kTruncated,
// kTrailingBytes or kNonFinite.
WeightVector parse_weights(std::string_view bytes);

// Writes to a sibling temporary file and renames it over path.
void write_weights(const std::filesystem::path& path, const WeightVector& weights);
WeightVector read_weights(const std::filesystem::path& path);

// Everything a detector needs, for one or several blocks.
struct SpecDocument {
  enum class Layout { kSingle, kBlocks };

  std::uint64_t key = 0;
  CodeParams params;
  ThresholdPair thresholds;
  double sigma = 0.0;
  std::optional<double> design_rate;
  std::uint64_t n = 0;             // model size at embedding time
  std::uint64_t message_bits = 0;  // payload length before block padding
  Layout layout = Layout::kSingle;
  std::vector<std::vector<std::uint64_t>> positions;  // one list per block

  std::size_t block_count() const noexcept { return positions.size(); }

  // kSingle: one block keyed by key itself (embed_message).
  // kBlocks: block j keyed by block_key(key, j) (embed_blocks).
  EmbedSpec block(std::size_t j) const;
  std::vector<EmbedSpec> blocks() const;

  // Throws DomainError/ValidationError when fields are inconsistent: bad
  // params or thresholds, wrong list sizes, duplicates, positions >= n, or a
  // message length that does not fit the block layout.
  void validate() const;

  friend bool operator==(const SpecDocument&, const SpecDocument&) = default;
};

std::string serialize_spec(const SpecDocument& spec);
// Throws ParseError for syntax problems (missing, duplicate, unknown or
// malformed fields) and ValidationError for semantic ones.
SpecDocument parse_spec(std::string_view text);

void write_spec(const std::filesystem::path& path, const SpecDocument& spec);
SpecDocument read_spec(const std::filesystem::path& path);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace cwcmark

#endif  // CWCMARK_MODEL_IO_HPP_
