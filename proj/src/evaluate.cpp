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

#include "upw/evaluate.hpp"

#include <optional>
#include <vector>

#include "upw/error.hpp"

namespace upw {
namespace {

using Kind = Formula::Kind;

// Largest value of v worth trying: an existential body conjoined with
// "a*v + r > 0" (a < 0) is false above it, and a universal body joined with
// "a*v + r > 0" (a > 0) is true above it.
Integer SearchLimit(const Formula& f, const Assignment& a, const Integer& bound) {
  const bool exists = f.kind() == Kind::kExists;
  const Variable& v = f.bound_variable();
  const Formula& body = f.body();
  const Kind junction = exists ? Kind::kAnd : Kind::kOr;
  std::vector<Formula> candidates;
  if (body.kind() == junction) {
    candidates = body.children();
  } else {
    candidates.push_back(body);
  }
  Integer limit = bound;
  for (const Formula& c : candidates) {
    if (c.kind() != Kind::kLess) continue;
    const Integer coef = c.term().coefficient(v);
    if (exists ? coef >= 0 : coef <= 0) continue;
    const Integer rest = c.term().without(v).evaluate(a);
    const Integer top = exists ? FloorDiv(rest - 1, -coef) : FloorDiv(-rest, coef);
    if (top < limit) limit = top;
  }
  return limit;
}

bool EvalRec(const Formula& f, Assignment& a, const Integer& bound) {
  switch (f.kind()) {
    case Kind::kTrue:
      return true;
    case Kind::kFalse:
      return false;
    case Kind::kLess:
      return f.term().evaluate(a) > 0;
    case Kind::kEqual:
      return f.term().evaluate(a) == 0;
    case Kind::kDivides:
      return Mod(f.term().evaluate(a), f.modulus()) == 0;
    case Kind::kNot:
      return !EvalRec(f.body(), a, bound);
    case Kind::kAnd:
      for (const Formula& c : f.children()) {
        if (!EvalRec(c, a, bound)) return false;
      }
      return true;
    case Kind::kOr:
      for (const Formula& c : f.children()) {
        if (EvalRec(c, a, bound)) return true;
      }
      return false;
    case Kind::kExists:
    case Kind::kForall: {
      const bool exists = f.kind() == Kind::kExists;
      const Variable& v = f.bound_variable();
      auto saved = a.find(v);
      std::optional<Integer> previous;
      if (saved != a.end()) previous = saved->second;
      bool result = !exists;
      const Integer limit = SearchLimit(f, a, bound);
      for (Integer n = 0; n <= limit; ++n) {
        a[v] = n;
        if (EvalRec(f.body(), a, bound) == exists) {
          result = exists;
          break;
        }
      }
      if (previous) {
        a[v] = *previous;
      } else {
        a.erase(v);
      }
      return result;
    }
  }
  return false;
}

void CheckInputs(const Formula& f, const Assignment& assignment, const Integer& bound) {
  if (bound < 0) throw DomainError("evaluation bound must be nonnegative");
  for (const Variable& v : f.free_vars()) {
    if (!assignment.count(v)) throw DomainError("no value assigned to free variable '" + v + "'");
  }
  for (const auto& [v, value] : assignment) {
    if (value < 0) throw DomainError("assignment to '" + v + "' is negative");
  }
}

// Magnitudes that keep every term evaluation inside 128 bits.
constexpr std::int64_t kCompactCoefficient = std::int64_t{1} << 40;
constexpr std::int64_t kCompactValue = std::int64_t{1} << 30;

bool Compact(const Integer& x, std::int64_t limit) { return x > -limit && x < limit; }

}  // namespace

bool Evaluate(const Formula& f, const Assignment& assignment, const Integer& bound) {
  return BoundedEvaluator(f)(assignment, bound);
}

BoundedEvaluator::BoundedEvaluator(const Formula& f) : formula_(f) {
  for (const Variable& v : f.free_vars()) free_slots_.emplace(v, slots_++);
  std::map<Variable, int> scope = free_slots_;
  root_ = Compile(f, scope);
}

int BoundedEvaluator::Compile(const Formula& f, std::map<Variable, int>& scope) {
  Node node;
  node.kind = f.kind();
  if (f.is_atom()) {
    for (const auto& [v, c] : f.term().coefficients()) {
      compact_ = compact_ && Compact(c, kCompactCoefficient);
      if (compact_) node.coefficients.emplace_back(scope.at(v), c.convert_to<std::int64_t>());
    }
    compact_ = compact_ && Compact(f.term().constant(), kCompactCoefficient);
    if (compact_) node.constant = f.term().constant().convert_to<std::int64_t>();
    if (f.kind() == Formula::Kind::kDivides) {
      compact_ = compact_ && Compact(f.modulus(), kCompactCoefficient);
      if (compact_) node.modulus = f.modulus().convert_to<std::int64_t>();
    }
  } else if (f.is_quantifier()) {
    node.slot = slots_++;
    const Variable& v = f.bound_variable();
    const auto previous = scope.find(v);
    std::optional<int> shadowed;
    if (previous != scope.end()) shadowed = previous->second;
    scope[v] = node.slot;
    node.children.push_back(Compile(f.body(), scope));
    if (shadowed) {
      scope[v] = *shadowed;
    } else {
      scope.erase(v);
    }
  } else {
    for (const Formula& c : f.children()) node.children.push_back(Compile(c, scope));
  }
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

std::int64_t BoundedEvaluator::Limit(const Node& q, const std::vector<std::int64_t>& values,
                                     std::int64_t bound) const {
  const bool exists = q.kind == Kind::kExists;
  const Node& body = nodes_[static_cast<std::size_t>(q.children.front())];
  const Kind junction = exists ? Kind::kAnd : Kind::kOr;
  std::vector<int> candidates;
  if (body.kind == junction) {
    candidates = body.children;
  } else {
    candidates.push_back(q.children.front());
  }
  __int128 limit = bound;
  for (int index : candidates) {
    const Node& c = nodes_[static_cast<std::size_t>(index)];
    if (c.kind != Kind::kLess) continue;
    __int128 coef = 0;
    __int128 rest = c.constant;
    for (const auto& [slot, k] : c.coefficients) {
      if (slot == q.slot) {
        coef += k;
      } else {
        rest += static_cast<__int128>(k) * values[static_cast<std::size_t>(slot)];
      }
    }
    if (exists ? coef >= 0 : coef <= 0) continue;
    // floor division of (rest - 1) by -coef, or of -rest by coef
    const __int128 num = exists ? rest - 1 : -rest;
    const __int128 den = exists ? -coef : coef;
    __int128 top = num / den;
    if ((num % den != 0) && (num < 0)) --top;
    if (top < limit) limit = top;
  }
  return static_cast<std::int64_t>(limit);
}

bool BoundedEvaluator::Run(int index, std::vector<std::int64_t>& values, std::int64_t bound) const {
  const Node& n = nodes_[static_cast<std::size_t>(index)];
  auto term = [&] {
    __int128 t = n.constant;
    for (const auto& [slot, k] : n.coefficients) t += static_cast<__int128>(k) * values[static_cast<std::size_t>(slot)];
    return t;
  };
  switch (n.kind) {
    case Kind::kTrue:
      return true;
    case Kind::kFalse:
      return false;
    case Kind::kLess:
      return term() > 0;
    case Kind::kEqual:
      return term() == 0;
    case Kind::kDivides:
      return term() % n.modulus == 0;
    case Kind::kNot:
      return !Run(n.children.front(), values, bound);
    case Kind::kAnd:
      for (int c : n.children) {
        if (!Run(c, values, bound)) return false;
      }
      return true;
    case Kind::kOr:
      for (int c : n.children) {
        if (Run(c, values, bound)) return true;
      }
      return false;
    case Kind::kExists:
    case Kind::kForall: {
      const bool exists = n.kind == Kind::kExists;
      const std::int64_t limit = Limit(n, values, bound);
      for (std::int64_t v = 0; v <= limit; ++v) {
        values[static_cast<std::size_t>(n.slot)] = v;
        if (Run(n.children.front(), values, bound) == exists) return exists;
      }
      return !exists;
    }
  }
  return false;
}

bool BoundedEvaluator::operator()(const Assignment& assignment, const Integer& bound) const {
  CheckInputs(formula_, assignment, bound);
  bool compact = compact_ && Compact(bound, kCompactValue);
  for (const auto& [v, slot] : free_slots_) compact = compact && Compact(assignment.at(v), kCompactValue);
  if (!compact) {
    Assignment scratch = assignment;
    return EvalRec(formula_, scratch, bound);
  }
  std::vector<std::int64_t> values(static_cast<std::size_t>(slots_), 0);
  for (const auto& [v, slot] : free_slots_) values[static_cast<std::size_t>(slot)] = assignment.at(v).convert_to<std::int64_t>();
  return Run(root_, values, bound.convert_to<std::int64_t>());
}

}  // namespace upw
