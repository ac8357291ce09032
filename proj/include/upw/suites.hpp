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

#ifndef UPW_SUITES_HPP_
#define UPW_SUITES_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "upw/ultrapower.hpp"

namespace upw {

struct SuiteResult {
  std::string name;
  std::size_t total = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;  // first few counterexamples

  bool ok() const { return passed == total; }
  void Check(bool condition, const std::function<std::string()>& describe);
};

struct SuiteContext {
  const UltrapowerModel* model = nullptr;
  std::uint64_t seed = 0;
  std::size_t count = 0;  // number of random instances
};

struct SuiteSpec {
  std::string name;
  std::string description;
  std::size_t quick_count;
  std::size_t full_count;
  std::function<SuiteResult(const SuiteContext&)> run;
};

// Every invariant suite, in a fixed order.
const std::vector<SuiteSpec>& AllSuites();
const SuiteSpec& FindSuite(const std::string& name);

// Deterministic per-suite seed.
std::uint64_t SuiteSeed(std::uint64_t seed, const std::string& name);

}  // namespace upw

#endif  // UPW_SUITES_HPP_
