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


#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 42;
  if (const char* env = std::getenv("UPW_SEED")) {
    try {
      std::size_t used = 0;
      seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      std::cout << R"({"cmd":"upw","error":{"kind":"usage","reason":"UPW_SEED must be an unsigned integer"}})"
                << '\n';
      return upw::cli::kUsage;
    }
  }
  std::vector<std::string> args(argv + 1, argv + argc);
  return upw::cli::Run(args, std::cout, seed);
}
