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

#ifndef UPW_FORMULA_HPP_
#define UPW_FORMULA_HPP_

#include <compare>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "upw/integer.hpp"
#include "upw/linear_term.hpp"

namespace upw {

namespace detail {
struct FormulaNode;
}  // namespace detail

// First-order formula over (N, 0, 1, +, <, Div_m). Values are immutable and
// share structure, so copies are cheap and safe across threads.
//
// Atoms are stored in normalized form:
//   kLess     0 < term()
//   kEqual    term() = 0          (leading coefficient positive)
//   kDivides  modulus() | term()  (coefficients reduced into [0, modulus))
//
// The static builders normalize locally: atoms are reduced by content,
// trivially decided atoms fold to true/false, And/Or are flattened, sorted and
// deduplicated, and negation is absorbed into `<` atoms. Bound variable names
// are left alone; Canonicalize() renames them.
//
// Every formula also carries a declared free-variable set. It is the set of
// variables the formula was written over, and survives simplifications that
// make a variable disappear (so `x = x` still has free variable x).
class Formula {
 public:
  enum class Kind { kTrue, kFalse, kLess, kEqual, kDivides, kNot, kAnd, kOr, kExists, kForall };

  Formula();  // true

  static Formula True();
  static Formula False();
  static Formula Bool(bool value) { return value ? True() : False(); }

  // 0 < term
  static Formula Positive(const LinearTerm& term);
  // term = 0
  static Formula Zero(const LinearTerm& term);
  static Formula Less(const LinearTerm& lhs, const LinearTerm& rhs);
  static Formula LessEq(const LinearTerm& lhs, const LinearTerm& rhs);
  static Formula Equal(const LinearTerm& lhs, const LinearTerm& rhs);
  // modulus | term; modulus must be >= 1 (Div_1 is true).
  static Formula Divides(const Integer& modulus, const LinearTerm& term);

  static Formula Not(const Formula& f);
  static Formula And(std::vector<Formula> children);
  static Formula Or(std::vector<Formula> children);
  static Formula And(const Formula& a, const Formula& b) { return And(std::vector<Formula>{a, b}); }
  static Formula Or(const Formula& a, const Formula& b) { return Or(std::vector<Formula>{a, b}); }
  static Formula Implies(const Formula& a, const Formula& b);
  static Formula Iff(const Formula& a, const Formula& b);
  static Formula Exists(const Variable& var, const Formula& body);
  static Formula Forall(const Variable& var, const Formula& body);
  static Formula Exists(const std::vector<Variable>& vars, const Formula& body);
  static Formula Forall(const std::vector<Variable>& vars, const Formula& body);

  Kind kind() const;
  bool is_true() const { return kind() == Kind::kTrue; }
  bool is_false() const { return kind() == Kind::kFalse; }
  bool is_atom() const;
  bool is_quantifier() const { return kind() == Kind::kExists || kind() == Kind::kForall; }
  bool is_quantifier_free() const;

  const LinearTerm& term() const;
  const Integer& modulus() const;
  const Variable& bound_variable() const;
  const std::vector<Formula>& children() const;
  const Formula& body() const { return children().front(); }

  // Declared free variables (see class comment).
  const std::set<Variable>& free_vars() const;
  // Free variables that actually occur.
  const std::set<Variable>& occurring_vars() const;
  bool mentions(const Variable& v) const { return occurring_vars().count(v) > 0; }

  Formula with_free_vars(const std::set<Variable>& extra) const;
  Formula with_declared_free_vars(const std::set<Variable>& vars) const;

  // Number of nodes.
  std::size_t size() const;

  std::string str() const;

  // Structural comparison; declared free variables are not compared.
  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> node) : node_(std::move(node)) {}
  static Formula Make(detail::FormulaNode node);
  static Formula MakeBinder(Kind kind, const Variable& var, const Formula& body);

  std::shared_ptr<const detail::FormulaNode> node_;

  friend Formula Canonicalize(const Formula&);
};

// Canonical form: local normalization everywhere and bound variables renamed
// by binder depth. Idempotent, invariant under alpha-renaming, preserves
// free_vars().
Formula Canonicalize(const Formula& f);

// Concrete syntax accepted by Parse().
std::string Render(const Formula& f);

// Capture-avoiding simultaneous substitution of linear terms for free
// variables. Declared free variables are updated accordingly.
Formula Substitute(const Formula& f, const std::map<Variable, LinearTerm>& replacements);
Formula Substitute(const Formula& f, const Variable& var, const LinearTerm& replacement);
Formula RenameFree(const Formula& f, const std::map<Variable, Variable>& renaming);

// A variable name not in `avoid`, derived from `base`.
Variable FreshVariable(const Variable& base, const std::set<Variable>& avoid);

}  // namespace upw

#endif  // UPW_FORMULA_HPP_
