// Copyright 2026 The upw Authors
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


#ifndef UPW_TOOLS_CLI_HPP_
#define UPW_TOOLS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace upw::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kResource = 3 };

// Runs one invocation (argv without the program name), writing result
// records to `out`. `default_seed` applies when --seed is absent.
int Run(const std::vector<std::string>& args, std::ostream& out, std::uint64_t default_seed = 42);

// Splits a script line into words: blanks separate, "..." allows escaped
// quotes and backslashes, '...' is literal. Throws std::invalid_argument on
// open quotes.
std::vector<std::string> SplitWords(const std::string& line);

struct OperationEntry {
  std::string module;
  std::string operation;
  std::string subcommand;
};

// Every library operation with the subcommand that exposes it.
const std::vector<OperationEntry>& Operations();

// Names of all registered subcommands.
std::vector<std::string> Subcommands();

}  // namespace upw::cli

#endif  // UPW_TOOLS_CLI_HPP_
