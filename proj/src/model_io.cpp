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

#include "cwcmark/model_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <system_error>
#include <unordered_set>

#include "cwcmark/errors.hpp"

namespace cwcmark {
namespace {

constexpr std::string_view kSpecFormat = "cwcmark-spec";
constexpr std::uint64_t kSpecVersion = 1;

void put_le(std::string& out, std::uint64_t value, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
}

std::uint64_t get_le(std::string_view in, std::size_t offset, int bytes) {
  std::uint64_t value = 0;
  for (int i = 0; i < bytes; ++i) {
    value |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[offset + i])) << (8 * i);
  }
  return value;
}

void write_atomically(const std::filesystem::path& path, const std::string& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError(ParseError::Kind::kIo, "cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw ParseError(ParseError::Kind::kIo, "failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ParseError(ParseError::Kind::kIo, "cannot move " + tmp.string() + " to " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(ParseError::Kind::kIo, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw ParseError(ParseError::Kind::kIo, "failed reading " + path.string());
  return bytes;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string join_indices(const std::vector<std::uint64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(values[i]);
  }
  return out;
}

ParseError bad_value(std::string_view field, std::string_view value) {
  return ParseError(ParseError::Kind::kBadValue,
                    "field '" + std::string(field) + "' has malformed value '" +
                        std::string(value) + "'");
}

std::uint64_t parse_u64(std::string_view field, std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw bad_value(field, text);
  }
  return value;
}

double parse_double(std::string_view field, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw bad_value(field, text);
  }
  return value;
}

std::vector<std::uint64_t> parse_indices(std::string_view field, std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    if (i == text.size()) break;
    std::size_t j = text.find(' ', i);
    if (j == std::string_view::npos) j = text.size();
    out.push_back(parse_u64(field, text.substr(i, j - i)));
    i = j;
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

// ---- Weight files -----------------------------------------------------------

std::string serialize_weights(const WeightVector& weights) {
  std::string out;
  out.reserve(kWeightHeaderBytes + 4 * weights.size());
  out.append(kWeightMagic, sizeof(kWeightMagic));
  put_le(out, kWeightVersion, 2);
  put_le(out, weights.size(), 8);
  for (float w : weights.values()) put_le(out, std::bit_cast<std::uint32_t>(w), 4);
  return out;
}

WeightVector parse_weights(std::string_view bytes) {
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kWeightMagic, 4) != 0) {
    throw ParseError(ParseError::Kind::kBadMagic, "not a weight file: bad magic");
  }
  if (bytes.size() < kWeightHeaderBytes) {
    throw ParseError(ParseError::Kind::kTruncated, "weight file header is truncated");
  }
  const auto version = get_le(bytes, 4, 2);
  if (version != kWeightVersion) {
    throw ParseError(ParseError::Kind::kBadVersion,
                     "unsupported weight file version " + std::to_string(version));
  }
  const std::uint64_t n = get_le(bytes, 6, 8);
  const std::uint64_t available = (bytes.size() - kWeightHeaderBytes) / 4;
  if (n > available) {
    throw ParseError(ParseError::Kind::kTruncated,
                     "weight file declares " + std::to_string(n) + " values but holds " +
                         std::to_string(available));
  }
  if (bytes.size() != kWeightHeaderBytes + 4 * n) {
    throw ParseError(ParseError::Kind::kTrailingBytes, "weight file has bytes past its payload");
  }
  if (n == 0) throw ParseError(ParseError::Kind::kBadValue, "weight file holds no values");
  std::vector<float> values(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto bits = static_cast<std::uint32_t>(get_le(bytes, kWeightHeaderBytes + 4 * i, 4));
    values[i] = std::bit_cast<float>(bits);
    if (!std::isfinite(values[i])) {
      throw ParseError(ParseError::Kind::kNonFinite,
                       "weight " + std::to_string(i) + " is not finite");
    }
  }
  return WeightVector(std::move(values));
}

void write_weights(const std::filesystem::path& path, const WeightVector& weights) {
  write_atomically(path, serialize_weights(weights));
}

WeightVector read_weights(const std::filesystem::path& path) {
  return parse_weights(read_file(path));
}

// ---- Spec files -------------------------------------------------------------

EmbedSpec SpecDocument::block(std::size_t j) const {
  const std::uint64_t block_key_value = layout == Layout::kSingle ? key : block_key(key, j);
  return EmbedSpec{block_key_value, params, thresholds, positions.at(j)};
}

std::vector<EmbedSpec> SpecDocument::blocks() const {
  std::vector<EmbedSpec> out;
  out.reserve(positions.size());
  for (std::size_t j = 0; j < positions.size(); ++j) out.push_back(block(j));
  return out;
}

void SpecDocument::validate() const {
  try {
    params.validate();
    thresholds.validate();
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
  if (!(std::isfinite(sigma) && sigma >= 0.0)) {
    throw ValidationError("sigma must be finite and non-negative");
  }
  if (design_rate && !(*design_rate >= 0.0 && *design_rate < 1.0)) {
    throw ValidationError("design rate must lie in [0, 1)");
  }
  if (positions.empty()) throw ValidationError("spec lists no position blocks");
  if (layout == Layout::kSingle) {
    if (positions.size() != 1) throw ValidationError("single layout must have exactly one block");
    if (message_bits != params.k) throw ValidationError("single layout needs message_bits == k");
  } else {
    if (message_bits == 0) throw ValidationError("message_bits must be positive");
    const std::uint64_t expected = (message_bits + params.k - 1) / params.k;
    if (positions.size() != expected) {
      throw ValidationError(std::to_string(message_bits) + " message bits need " +
                            std::to_string(expected) + " blocks of " + std::to_string(params.k) +
                            ", spec lists " + std::to_string(positions.size()));
    }
  }
  std::unordered_set<std::uint64_t> taken;
  for (std::size_t j = 0; j < positions.size(); ++j) {
    try {
      block(j).validate(n);
    } catch (const DomainError& e) {
      throw ValidationError("block " + std::to_string(j) + ": " + e.what());
    }
    for (std::uint64_t p : positions[j]) {
      if (!taken.insert(p).second) {
        throw ValidationError("position " + std::to_string(p) + " is shared between blocks");
      }
    }
  }
}

std::string serialize_spec(const SpecDocument& spec) {
  std::ostringstream out;
  out << "format = " << kSpecFormat << '\n'
      << "version = " << kSpecVersion << '\n'
      << "key = " << spec.key << '\n'
      << "k = " << spec.params.k << '\n'
      << "alpha = " << spec.params.alpha << '\n'
      << "L = " << spec.params.length << '\n'
      << "t0 = " << format_double(spec.thresholds.t0) << '\n'
      << "t1 = " << format_double(spec.thresholds.t1) << '\n'
      << "sigma = " << format_double(spec.sigma) << '\n'
      << "design_rate = " << (spec.design_rate ? format_double(*spec.design_rate) : "none")
      << '\n'
      << "n = " << spec.n << '\n'
      << "message_bits = " << spec.message_bits << '\n'
      << "layout = " << (spec.layout == SpecDocument::Layout::kSingle ? "single" : "blocks")
      << '\n'
      << "blocks = " << spec.positions.size() << '\n';
  for (std::size_t j = 0; j < spec.positions.size(); ++j) {
    out << "positions." << j << " = " << join_indices(spec.positions[j]) << '\n';
  }
  return out.str();
}

SpecDocument parse_spec(std::string_view text) {
  std::map<std::string, std::string, std::less<>> fields;
  std::size_t line_start = 0;
  std::size_t line_no = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    const std::string_view line = trim(text.substr(line_start, line_end - line_start));
    ++line_no;
    line_start = line_end + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(ParseError::Kind::kBadValue,
                       "line " + std::to_string(line_no) + " is not 'name = value'");
    }
    std::string name(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (!fields.emplace(name, value).second) {
      throw ParseError(ParseError::Kind::kDuplicateField, "field '" + name + "' appears twice");
    }
  }

  std::set<std::string, std::less<>> used;
  auto take = [&](std::string_view name) -> const std::string& {
    const auto it = fields.find(name);
    if (it == fields.end()) {
      throw ParseError(ParseError::Kind::kMissingField,
                       "spec is missing field '" + std::string(name) + "'");
    }
    used.emplace(name);
    return it->second;
  };

  if (take("format") != kSpecFormat) {
    throw ParseError(ParseError::Kind::kBadMagic, "not a cwcmark spec file");
  }
  if (parse_u64("version", take("version")) != kSpecVersion) {
    throw ParseError(ParseError::Kind::kBadVersion, "unsupported spec version");
  }

  SpecDocument spec;
  spec.key = parse_u64("key", take("key"));
  spec.params.k = parse_u64("k", take("k"));
  spec.params.alpha = parse_u64("alpha", take("alpha"));
  spec.params.length = parse_u64("L", take("L"));
  spec.thresholds.t0 = parse_double("t0", take("t0"));
  spec.thresholds.t1 = parse_double("t1", take("t1"));
  spec.sigma = parse_double("sigma", take("sigma"));
  if (const std::string& rate = take("design_rate"); rate != "none") {
    spec.design_rate = parse_double("design_rate", rate);
  }
  spec.n = parse_u64("n", take("n"));
  spec.message_bits = parse_u64("message_bits", take("message_bits"));
  const std::string& layout = take("layout");
  if (layout == "single") {
    spec.layout = SpecDocument::Layout::kSingle;
  } else if (layout == "blocks") {
    spec.layout = SpecDocument::Layout::kBlocks;
  } else {
    throw bad_value("layout", layout);
  }
  const std::uint64_t blocks = parse_u64("blocks", take("blocks"));
  if (blocks > fields.size()) throw bad_value("blocks", std::to_string(blocks));
  for (std::uint64_t j = 0; j < blocks; ++j) {
    const std::string name = "positions." + std::to_string(j);
    spec.positions.push_back(parse_indices(name, take(name)));
  }
  for (const auto& [name, value] : fields) {
    if (!used.contains(name)) {
      throw ParseError(ParseError::Kind::kUnknownField, "unknown field '" + name + "'");
    }
  }
  spec.validate();
  return spec;
}

void write_spec(const std::filesystem::path& path, const SpecDocument& spec) {
  spec.validate();
  write_atomically(path, serialize_spec(spec));
}

SpecDocument read_spec(const std::filesystem::path& path) { return parse_spec(read_file(path)); }

}  // namespace cwcmark
