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

#include "upw/integer.hpp"

#include <cctype>

#include "upw/error.hpp"

namespace upw {

Integer Gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

Integer Lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / Gcd(a, b) * b);
}

Integer FloorDiv(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

Integer CeilDiv(const Integer& a, const Integer& b) {
  return -FloorDiv(-a, b);
}

Integer Mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

std::size_t BitLength(const Integer& a) {
  if (a == 0) return 0;
  return boost::multiprecision::msb(abs(a)) + 1;
}

std::string ToString(const Integer& a) { return a.str(); }

std::string ToString(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational ParseRational(const std::string& text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> Rational {
    throw ParseError("bad rational '" + text + "': " + why, 1, pos + 1);
  };
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  auto digits = [&]() {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return text.substr(start, pos - start);
  };
  std::string whole = digits();
  if (whole.empty()) return fail("expected digits");
  Rational value{Integer(whole)};
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    std::string den = digits();
    if (den.empty()) return fail("expected denominator");
    Integer d(den);
    if (d == 0) return fail("zero denominator");
    value = Rational(Integer(whole), d);
  } else if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::string frac = digits();
    if (frac.empty()) return fail("expected fractional digits");
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
    value = Rational(Integer(whole) * scale + Integer(frac), scale);
  }
  if (pos != text.size()) return fail("trailing characters");
  return negative ? Rational(-value) : value;
}

}  // namespace upw
