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

#ifndef UPW_LINEAR_TERM_HPP_
#define UPW_LINEAR_TERM_HPP_

#include <compare>
#include <map>
#include <set>
#include <string>

#include "upw/integer.hpp"

namespace upw {

using Variable = std::string;
using Assignment = std::map<Variable, Integer>;

// c0 + c1*x1 + ... + ck*xk with exact integer coefficients. Variables are
// kept in lexicographic name order and zero coefficients are never stored.
// Signature-level terms have nonnegative coefficients; atoms internally carry
// signed differences, which the renderer splits back across the relation.
class LinearTerm {
 public:
  LinearTerm() = default;
  explicit LinearTerm(Integer constant) : constant_(std::move(constant)) {}
  static LinearTerm Var(const Variable& name, Integer coefficient = 1);

  const Integer& constant() const { return constant_; }
  const std::map<Variable, Integer>& coefficients() const { return coefficients_; }
  Integer coefficient(const Variable& name) const;
  bool mentions(const Variable& name) const { return coefficients_.count(name) > 0; }
  bool is_constant() const { return coefficients_.empty(); }
  std::set<Variable> variables() const;

  // gcd of the variable coefficients (0 for a constant term).
  Integer content() const;
  std::size_t max_bits() const;

  LinearTerm& operator+=(const LinearTerm& other);
  LinearTerm& operator-=(const LinearTerm& other);
  LinearTerm& operator*=(const Integer& factor);
  friend LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
  friend LinearTerm operator-(LinearTerm a, const LinearTerm& b) { return a -= b; }
  friend LinearTerm operator*(LinearTerm a, const Integer& k) { return a *= k; }
  friend LinearTerm operator-(LinearTerm a) { return a *= Integer(-1); }

  void set_constant(Integer c) { constant_ = std::move(c); }
  void set_coefficient(const Variable& name, const Integer& c);

  // Term with `name` removed (its coefficient dropped).
  LinearTerm without(const Variable& name) const;
  LinearTerm substitute(const Variable& name, const LinearTerm& replacement) const;
  LinearTerm substitute(const std::map<Variable, LinearTerm>& replacements) const;

  // Throws DomainError naming the first unassigned variable.
  Integer evaluate(const Assignment& assignment) const;

  // Renders c0 + ... using only nonnegative coefficients; precondition that
  // all coefficients and the constant are >= 0. Empty term renders as "0".
  std::string render_nonnegative() const;

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
  friend std::strong_ordering operator<=>(const LinearTerm& a, const LinearTerm& b);

 private:
  std::map<Variable, Integer> coefficients_;
  Integer constant_ = 0;
};

}  // namespace upw

#endif  // UPW_LINEAR_TERM_HPP_
