// Copyright 2026 The cpip Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CPIP_CLI_H_
#define CPIP_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace cpip {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;  // also: `check` found violations
inline constexpr int kExitUsage = 2;       // usage, parse and validation errors
inline constexpr int kExitFailure = 3;     // solver errors, oracle budget

// Entry point of the `cpip` tool. `args` excludes the program name.
// Subcommands: solve, round, oracle, gen, bench, check.
int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace cpip

#endif  // CPIP_CLI_H_
