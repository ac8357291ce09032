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


#ifndef UPW_LITERAL_HPP_
#define UPW_LITERAL_HPP_

#include <string_view>
#include <vector>

#include "upw/linear_term.hpp"
#include "upw/qe.hpp"
#include "upw/ultrapower.hpp"

namespace upw {

// Textual forms used by the command line:
//   [id@q]                                   generator at label q
//   [const@n]                                the constant n
//   [graph "F" vars (x1,..,xk) out z @ q1,..,qk]   certified graph
//   [term "T" @ q1,..,qk]                    z = T over x1..xk
// Throws ParseError on malformed text and DomainError on rejected graphs.
GeneralizedTerm ParseTermLiteral(std::string_view text, const QeOptions& options = {});

// Zero or more literals separated by whitespace or commas.
std::vector<GeneralizedTerm> ParseTermLiterals(std::string_view text, const QeOptions& options = {});

// "0,1/2,3", optionally braced; the empty string is the empty list.
std::vector<IndexLabel> ParseLabelList(std::string_view text);

// "x=3,y=6"; values must be nonnegative integers.
Assignment ParseAssignment(std::string_view text);

// "a,b,c" split on commas with surrounding blanks removed; empty gives {}.
std::vector<std::string> SplitList(std::string_view text);

}  // namespace upw

#endif  // UPW_LITERAL_HPP_
