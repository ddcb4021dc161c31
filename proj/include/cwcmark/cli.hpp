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

// Command-line front end. run_cli is main() without the process around it so
// tests can drive every verb in-process.
//
// Exit codes: 0 success, 2 usage, 3 data or file format, 4 verification
// failure.

#ifndef CWCMARK_CLI_HPP_
#define CWCMARK_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace cwcmark {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitVerify = 4;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cwcmark

#endif  // CWCMARK_CLI_HPP_
