// Copyright 2026 The scqkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end, split from main() so tests can drive it in-process.

#ifndef SCQKD_TOOLS_CLI_HPP
#define SCQKD_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace scqkd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
/// simulate: some statistic is more than 4 standard errors from the oracle.
inline constexpr int kExitMismatch = 2;

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace scqkd::cli

#endif  // SCQKD_TOOLS_CLI_HPP
