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

#ifndef UPW_INTEGER_HPP_
#define UPW_INTEGER_HPP_

#include <cstddef>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace upw {

// Exact integers and rationals. Coefficient growth during elimination is
// unbounded, so nothing here is fixed-width.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Integer Gcd(const Integer& a, const Integer& b);
Integer Lcm(const Integer& a, const Integer& b);

// Floor / ceiling division for b != 0.
Integer FloorDiv(const Integer& a, const Integer& b);
Integer CeilDiv(const Integer& a, const Integer& b);

// Representative of a mod m in [0, m) for m > 0.
Integer Mod(const Integer& a, const Integer& m);

std::size_t BitLength(const Integer& a);

std::string ToString(const Integer& a);
std::string ToString(const Rational& q);

// Accepts "p", "-p", "p/q" and decimal "a.b"; throws ParseError otherwise.
Rational ParseRational(const std::string& text);

}  // namespace upw

#endif  // UPW_INTEGER_HPP_
