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

// Exception types shared by all cwcmark modules.

#ifndef CWCMARK_ERRORS_HPP_
#define CWCMARK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace cwcmark {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the operation's domain (bad size, bad rate, n = 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Integer value does not fit the requested bit width.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Message index >= binomial(L, alpha).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Codeword length or Hamming weight does not match the code parameters.
class MalformedCodewordError : public Error {
 public:
  using Error::Error;
};

// Configuration refused by policy, e.g. L too large relative to N.
class PolicyError : public Error {
 public:
  using Error::Error;
};

// Threshold design produced an unusable value (T1 <= 0).
class DesignError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  enum class Kind {
    kIo,
    kBadMagic,
    kBadVersion,
    kTruncated,
    kTrailingBytes,
    kNonFinite,
    kMissingField,
    kDuplicateField,
    kBadValue,
    kUnknownField,
  };

  ParseError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Spec and data are individually valid but inconsistent with each other.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace cwcmark

#endif  // CWCMARK_ERRORS_HPP_
