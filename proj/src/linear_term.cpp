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

#include "upw/linear_term.hpp"

#include <algorithm>

#include "upw/error.hpp"

namespace upw {

LinearTerm LinearTerm::Var(const Variable& name, Integer coefficient) {
  LinearTerm t;
  t.set_coefficient(name, coefficient);
  return t;
}

Integer LinearTerm::coefficient(const Variable& name) const {
  auto it = coefficients_.find(name);
  return it == coefficients_.end() ? Integer(0) : it->second;
}

std::set<Variable> LinearTerm::variables() const {
  std::set<Variable> out;
  for (const auto& [v, c] : coefficients_) out.insert(v);
  return out;
}

Integer LinearTerm::content() const {
  Integer g = 0;
  for (const auto& [v, c] : coefficients_) g = Gcd(g, c);
  return g;
}

std::size_t LinearTerm::max_bits() const {
  std::size_t bits = BitLength(constant_);
  for (const auto& [v, c] : coefficients_) bits = std::max(bits, BitLength(c));
  return bits;
}

void LinearTerm::set_coefficient(const Variable& name, const Integer& c) {
  if (c == 0) {
    coefficients_.erase(name);
  } else {
    coefficients_[name] = c;
  }
}

LinearTerm& LinearTerm::operator+=(const LinearTerm& other) {
  constant_ += other.constant_;
  for (const auto& [v, c] : other.coefficients_) {
    auto it = coefficients_.find(v);
    if (it == coefficients_.end()) {
      coefficients_.emplace(v, c);
    } else {
      it->second += c;
      if (it->second == 0) coefficients_.erase(it);
    }
  }
  return *this;
}

LinearTerm& LinearTerm::operator-=(const LinearTerm& other) {
  return *this += other * Integer(-1);
}

LinearTerm& LinearTerm::operator*=(const Integer& factor) {
  if (factor == 0) {
    coefficients_.clear();
    constant_ = 0;
    return *this;
  }
  constant_ *= factor;
  for (auto& [v, c] : coefficients_) c *= factor;
  return *this;
}

LinearTerm LinearTerm::without(const Variable& name) const {
  LinearTerm t = *this;
  t.coefficients_.erase(name);
  return t;
}

LinearTerm LinearTerm::substitute(const Variable& name, const LinearTerm& replacement) const {
  auto it = coefficients_.find(name);
  if (it == coefficients_.end()) return *this;
  LinearTerm t = without(name);
  t += replacement * it->second;
  return t;
}

LinearTerm LinearTerm::substitute(const std::map<Variable, LinearTerm>& replacements) const {
  LinearTerm t(constant_);
  for (const auto& [v, c] : coefficients_) {
    auto it = replacements.find(v);
    if (it == replacements.end()) {
      t += Var(v, c);
    } else {
      t += it->second * c;
    }
  }
  return t;
}

Integer LinearTerm::evaluate(const Assignment& assignment) const {
  Integer value = constant_;
  for (const auto& [v, c] : coefficients_) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw DomainError("no value assigned to free variable '" + v + "'");
    value += c * it->second;
  }
  return value;
}

std::string LinearTerm::render_nonnegative() const {
  std::string out;
  for (const auto& [v, c] : coefficients_) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += c.str() + "*";
    out += v;
  }
  if (constant_ != 0 || out.empty()) {
    if (!out.empty()) out += " + ";
    out += constant_.str();
  }
  return out;
}

std::strong_ordering operator<=>(const LinearTerm& a, const LinearTerm& b) {
  auto ia = a.coefficients_.begin();
  auto ib = b.coefficients_.begin();
  for (; ia != a.coefficients_.end() && ib != b.coefficients_.end(); ++ia, ++ib) {
    if (auto c = ia->first <=> ib->first; c != 0) return c;
    if (ia->second != ib->second) {
      return ia->second < ib->second ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  if (ia != a.coefficients_.end()) return std::strong_ordering::greater;
  if (ib != b.coefficients_.end()) return std::strong_ordering::less;
  if (a.constant_ == b.constant_) return std::strong_ordering::equal;
  return a.constant_ < b.constant_ ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace upw
