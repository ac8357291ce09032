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

#ifndef UPW_PARSER_HPP_
#define UPW_PARSER_HPP_

#include <string_view>

#include "upw/formula.hpp"
#include "upw/linear_term.hpp"

namespace upw {

// Grammar (ASCII):
//   formula := iff ; iff := imp { "<->" imp } ; imp := or [ "->" imp ] ;
//   or := and { "|" and } ; and := unary { "&" unary } ;
//   unary := "!" unary | "exists" VAR "." unary | "forall" VAR "." unary | atom ;
//   atom := term ("=" | "<" | "<=") term | "Div_" NAT "(" term ")"
//         | "(" formula ")" | "true" | "false" ;
//   term := prod { "+" prod } ; prod := NAT "*" VAR | NAT | VAR ;
//   VAR := [a-z][a-zA-Z0-9_]* ; NAT := [0-9]+
// "->" associates to the right. Returns the canonical form.
Formula Parse(std::string_view text);

LinearTerm ParseTerm(std::string_view text);

}  // namespace upw

#endif  // UPW_PARSER_HPP_
