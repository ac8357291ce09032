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

#include "upw/ultrafilter.hpp"

#include <algorithm>
#include <utility>

#include "upw/error.hpp"

namespace upw {
namespace {

using Kind = Formula::Kind;

// Eventual truth of a quantifier-free formula as x grows through multiples of
// every modulus.
Formula AtInfinity(const Formula& f, const Variable& x) {
  if (!f.mentions(x)) return f;
  switch (f.kind()) {
    case Kind::kLess:
      return Formula::Bool(f.term().coefficient(x) > 0);
    case Kind::kEqual:
      return Formula::False();
    case Kind::kDivides:
      return Formula::Divides(f.modulus(), f.term().without(x));
    case Kind::kNot:
      return Formula::Not(AtInfinity(f.body(), x));
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& c : f.children()) kids.push_back(AtInfinity(c, x));
      return f.kind() == Kind::kAnd ? Formula::And(std::move(kids)) : Formula::Or(std::move(kids));
    }
    default:
      throw InvariantViolation("quantifier left after elimination");
  }
}

std::set<Variable> Without(std::set<Variable> vars, const Variable& x) {
  vars.erase(x);
  return vars;
}

}  // namespace

UltrafilterOracle::UltrafilterOracle(std::string name, TransformFn transform, QeOptions options)
    : name_(std::move(name)), transform_(std::move(transform)), options_(options) {}

Formula UltrafilterOracle::transform(const Formula& phi, const Variable& x) const {
  if (!phi.free_vars().count(x)) {
    throw DomainError("variable '" + x + "' is not free in " + Render(phi));
  }
  return transform_(phi, x).with_declared_free_vars(Without(phi.free_vars(), x));
}

bool UltrafilterOracle::member(const Formula& phi, const Variable& x) const {
  return MemberN(*this, IndexedSetFormula(phi, {x}));
}

UltrafilterOracle BuiltinInfinityUltrafilter(const QeOptions& options) {
  return UltrafilterOracle(
      "infinity",
      [options](const Formula& phi, const Variable& x) { return InfinityTransform(phi, x, options); },
      options);
}

Formula InfinityTransform(const Formula& phi, const Variable& x, const QeOptions& options) {
  const Formula psi = Eliminate(phi, options);
  return Canonicalize(AtInfinity(psi, x).with_declared_free_vars(Without(phi.free_vars(), x)));
}

Formula WitnessFormula(const Formula& phi, const Variable& x, const QeOptions& options) {
  const Formula psi = Eliminate(phi, options);
  const Integer l = XModulusLcm(psi, x);
  std::set<Variable> avoid = phi.free_vars();
  avoid.insert(x);
  const Variable a = FreshVariable("a", avoid);
  const LinearTerm xt = LinearTerm::Var(x);
  const Formula guard = Formula::And(Formula::Less(LinearTerm::Var(a), xt), Formula::Divides(l, xt));
  return Canonicalize(Formula::Exists(a, Formula::Forall(x, Formula::Implies(guard, psi))));
}

IndexedSetFormula::IndexedSetFormula(Formula formula, std::vector<Variable> vars)
    : vars_(std::move(vars)) {
  std::set<Variable> seen;
  for (const Variable& v : vars_) {
    if (!seen.insert(v).second) throw DomainError("coordinate '" + v + "' listed twice");
  }
  formula_ = formula.with_free_vars(seen);
}

std::set<Variable> IndexedSetFormula::parameters() const {
  std::set<Variable> out = formula_.free_vars();
  for (const Variable& v : vars_) out.erase(v);
  return out;
}

Formula FoldTransforms(const UltrafilterOracle& u, const IndexedSetFormula& x) {
  Formula current = x.formula();
  for (auto it = x.vars().rbegin(); it != x.vars().rend(); ++it) current = u.transform(current, *it);
  return current;
}

bool MemberN(const UltrafilterOracle& u, const IndexedSetFormula& x) {
  const std::set<Variable> params = x.parameters();
  if (!params.empty()) {
    throw DomainError("membership needs numeral parameters; '" + *params.begin() + "' is free");
  }
  return Decide(FoldTransforms(u, x), u.qe_options());
}

IndexedSetFormula Section(const IndexedSetFormula& x, const std::map<Variable, Integer>& values) {
  std::vector<Integer> prefix;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i >= x.vars().size()) throw DomainError("section assigns more values than coordinates");
    auto it = values.find(x.vars()[i]);
    if (it == values.end()) {
      throw DomainError("section must assign a prefix of the coordinates; missing '" + x.vars()[i] + "'");
    }
    prefix.push_back(it->second);
  }
  return Section(x, prefix);
}

IndexedSetFormula Section(const IndexedSetFormula& x, const std::vector<Integer>& prefix) {
  if (prefix.size() > x.vars().size()) throw DomainError("section assigns more values than coordinates");
  std::map<Variable, LinearTerm> subst;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] < 0) throw DomainError("section values must be nonnegative");
    subst.emplace(x.vars()[i], LinearTerm(prefix[i]));
  }
  std::vector<Variable> rest(x.vars().begin() + static_cast<std::ptrdiff_t>(prefix.size()), x.vars().end());
  return IndexedSetFormula(Canonicalize(Substitute(x.formula(), subst)), std::move(rest));
}

}  // namespace upw
