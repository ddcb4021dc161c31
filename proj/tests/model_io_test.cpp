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

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>

#include "cwcmark/errors.hpp"
#include "cwcmark/gaussian.hpp"
#include "cwcmark/model_io.hpp"
#include "cwcmark/watermark.hpp"

using namespace cwcmark;
using Kind = ParseError::Kind;

namespace {

Kind parse_kind(std::string_view bytes) {
  try {
    parse_weights(bytes);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("parse succeeded");
  return Kind::kIo;
}

Kind spec_kind(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("parse succeeded");
  return Kind::kIo;
}

SpecDocument sample_spec() {
  SpecDocument doc;
  doc.key = 0xfeedface12345678ULL;
  doc.params = CodeParams{8, 2, 24};
  doc.thresholds = ThresholdPair{0.005, 0.0196};
  doc.sigma = 0.01;
  doc.design_rate = 0.95;
  doc.n = 5000;
  doc.message_bits = 8;
  doc.positions.push_back(select_positions(3, 5000, 24));
  return doc;
}

std::string replace_line(std::string text, const std::string& prefix, const std::string& line) {
  const auto found = text.find("\n" + prefix);
  REQUIRE(found != std::string::npos);
  const auto at = found + 1;
  const auto end = text.find('\n', at);
  return text.replace(at, end - at, line);
}

}  // namespace

TEST_CASE("weight files roundtrip bit-exactly") {
  const WeightVector w = sample_gaussian_weights(1000000, 0.01, 4);
  const auto path = std::filesystem::temp_directory_path() / "cwcmark_io_test.cwcw";
  write_weights(path, w);
  CHECK(std::filesystem::file_size(path) == kWeightHeaderBytes + 4 * w.size());
  CHECK(bit_identical(read_weights(path), w));
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_weights(path), ParseError);

  const WeightVector odd({-0.0f, 1e-40f, std::numeric_limits<float>::max()});
  CHECK(bit_identical(parse_weights(serialize_weights(odd)), odd));
}

TEST_CASE("weight file layout is little-endian") {
  const std::string bytes = serialize_weights(WeightVector({1.0f}));
  REQUIRE(bytes.size() == 18);
  CHECK(bytes.substr(0, 4) == "CWCW");
  CHECK(bytes[4] == 1);
  CHECK(bytes[5] == 0);
  CHECK(bytes[6] == 1);
  CHECK(bytes.substr(7, 7) == std::string(7, '\0'));
  CHECK(static_cast<unsigned char>(bytes[17]) == 0x3f);
  CHECK(static_cast<unsigned char>(bytes[16]) == 0x80);
}

TEST_CASE("corrupted weight files") {
  const std::string good = serialize_weights(WeightVector({1.0f, 2.0f, 3.0f}));
  std::string bad_magic = good;
  bad_magic[0] = 'X';
  CHECK(parse_kind(bad_magic) == Kind::kBadMagic);
  CHECK(parse_kind(good.substr(0, good.size() - 1)) == Kind::kTruncated);
  CHECK(parse_kind(good.substr(0, 9)) == Kind::kTruncated);
  CHECK(parse_kind(good + "x") == Kind::kTrailingBytes);
  std::string version = good;
  version[4] = 2;
  CHECK(parse_kind(version) == Kind::kBadVersion);
  std::string nan = good;
  const float q = std::numeric_limits<float>::quiet_NaN();
  std::memcpy(&nan[kWeightHeaderBytes + 4], &q, 4);
  CHECK(parse_kind(nan) == Kind::kNonFinite);
  std::string inf = good;
  const float i = std::numeric_limits<float>::infinity();
  std::memcpy(&inf[kWeightHeaderBytes], &i, 4);
  CHECK(parse_kind(inf) == Kind::kNonFinite);
  CHECK(parse_kind(good.substr(0, kWeightHeaderBytes - 8) + std::string(8, '\0')) ==
        Kind::kBadValue);
}

TEST_CASE("spec files roundtrip") {
  const SpecDocument doc = sample_spec();
  const std::string text = serialize_spec(doc);
  CHECK(text.rfind("format = cwcmark-spec\nversion = 1\n", 0) == 0);
  CHECK(parse_spec(text) == doc);

  SpecDocument no_rate = doc;
  no_rate.design_rate.reset();
  CHECK(serialize_spec(no_rate).find("design_rate = none") != std::string::npos);
  CHECK(parse_spec(serialize_spec(no_rate)) == no_rate);

  const auto path = std::filesystem::temp_directory_path() / "cwcmark_io_test.spec";
  write_spec(path, doc);
  CHECK(read_spec(path) == doc);
  std::filesystem::remove(path);
}

TEST_CASE("malformed spec files") {
  const std::string text = serialize_spec(sample_spec());
  CHECK(spec_kind(replace_line(text, "sigma =", "")) == Kind::kMissingField);
  CHECK(spec_kind(text + "k = 8\n") == Kind::kDuplicateField);
  CHECK(spec_kind(text + "colour = blue\n") == Kind::kUnknownField);
  CHECK(spec_kind(replace_line(text, "alpha =", "alpha = two")) == Kind::kBadValue);
  CHECK(spec_kind(replace_line(text, "version =", "version = 2")) == Kind::kBadVersion);
  CHECK_THROWS_AS(parse_spec(replace_line(text, "t0 =", "t0 = 0.03")), ValidationError);
  CHECK_THROWS_AS(parse_spec(replace_line(text, "n =", "n = 10")), ValidationError);
}

TEST_CASE("positions beyond the model are caught at use time") {
  const SpecDocument doc = sample_spec();
  const EmbedSpec spec = doc.block(0);
  const WeightVector small = sample_gaussian_weights(100, 0.01, 1);
  CHECK_THROWS_AS(extract(small, spec), ValidationError);
}
