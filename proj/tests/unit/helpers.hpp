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


#ifndef UPW_TESTS_UNIT_HELPERS_HPP_
#define UPW_TESTS_UNIT_HELPERS_HPP_

#include <optional>
#include <ostream>
#include <string>

#include "automaton.hpp"
#include "upw/formula.hpp"
#include "upw/parser.hpp"

namespace upw {

inline void PrintTo(const Formula& f, std::ostream* os) { *os << Render(f); }

}  // namespace upw

namespace upw::testing {

inline Formula P(const std::string& text) { return Parse(text); }

// Same set of satisfying assignments over the naturals.
inline bool SameSet(const Formula& a, const Formula& b) {
  return oracle::Equivalent(oracle::Compile(a), oracle::Compile(b));
}

// SameSet within a state budget; nullopt when the budget is exceeded.
inline std::optional<bool> SameSetWithin(const Formula& a, const Formula& b, std::size_t max_states) {
  try {
    return oracle::Equivalent(oracle::Compile(a, max_states), oracle::Compile(b, max_states));
  } catch (const oracle::BudgetExceeded&) {
    return std::nullopt;
  }
}

}  // namespace upw::testing

#endif  // UPW_TESTS_UNIT_HELPERS_HPP_
