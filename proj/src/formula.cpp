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

#include "upw/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "upw/error.hpp"

namespace upw {

namespace detail {

struct FormulaNode {
  Formula::Kind kind = Formula::Kind::kTrue;
  LinearTerm term;
  Integer modulus = 0;
  Variable var;
  std::vector<Formula> children;
  std::set<Variable> declared;
  std::set<Variable> occurring;
  std::size_t size = 1;
  bool quantifier_free = true;
};

}  // namespace detail

using detail::FormulaNode;
using Kind = Formula::Kind;

namespace {

const std::shared_ptr<const FormulaNode>& TrueNode() {
  static const auto node = std::make_shared<const FormulaNode>(FormulaNode{.kind = Kind::kTrue});
  return node;
}

const std::shared_ptr<const FormulaNode>& FalseNode() {
  static const auto node = std::make_shared<const FormulaNode>(FormulaNode{.kind = Kind::kFalse});
  return node;
}

// Inverse of a modulo m, for gcd(a, m) = 1 and m >= 2.
Integer ModInverse(const Integer& a, const Integer& m) {
  Integer old_r = Mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    Integer q = old_r / r;
    Integer t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return Mod(old_s, m);
}

bool AllCoefficients(const LinearTerm& t, bool positive) {
  for (const auto& [v, c] : t.coefficients()) {
    if ((c > 0) != positive) return false;
  }
  return true;
}

}  // namespace

Formula::Formula() : node_(TrueNode()) {}

Formula Formula::True() { return Formula(TrueNode()); }
Formula Formula::False() { return Formula(FalseNode()); }

Formula Formula::Make(FormulaNode node) {
  node.size = 1;
  node.quantifier_free = node.kind != Kind::kExists && node.kind != Kind::kForall;
  node.occurring = node.term.variables();
  for (const Formula& c : node.children) {
    node.size += c.size();
    node.quantifier_free = node.quantifier_free && c.is_quantifier_free();
    node.occurring.insert(c.occurring_vars().begin(), c.occurring_vars().end());
  }
  if (node.kind == Kind::kExists || node.kind == Kind::kForall) node.occurring.erase(node.var);
  return Formula(std::make_shared<const FormulaNode>(std::move(node)));
}

Formula Formula::Positive(const LinearTerm& source) {
  std::set<Variable> declared = source.variables();
  Formula out;
  if (source.is_constant()) {
    out = Bool(source.constant() > 0);
  } else {
    // e > 0  <=>  sum a_i x_i >= 1 - c  <=>  sum (a_i/g) x_i >= ceil((1 - c)/g)
    const Integer g = source.content();
    LinearTerm t;
    for (const auto& [v, c] : source.coefficients()) t.set_coefficient(v, c / g);
    t.set_constant(1 - CeilDiv(1 - source.constant(), g));
    if (AllCoefficients(t, true) && t.constant() > 0) {
      out = True();
    } else if (AllCoefficients(t, false) && t.constant() <= 0) {
      out = False();
    } else {
      out = Make(FormulaNode{.kind = Kind::kLess, .term = std::move(t)});
    }
  }
  return out.with_free_vars(declared);
}

Formula Formula::Zero(const LinearTerm& source) {
  std::set<Variable> declared = source.variables();
  Formula out;
  if (source.is_constant()) {
    out = Bool(source.constant() == 0);
  } else {
    const Integer g = source.content();
    if (source.constant() % g != 0) {
      out = False();
    } else {
      LinearTerm t;
      Integer sign = source.coefficients().begin()->second < 0 ? -1 : 1;
      for (const auto& [v, c] : source.coefficients()) t.set_coefficient(v, sign * c / g);
      t.set_constant(sign * source.constant() / g);
      if (AllCoefficients(t, true) && t.constant() > 0) {
        out = False();
      } else {
        out = Make(FormulaNode{.kind = Kind::kEqual, .term = std::move(t)});
      }
    }
  }
  return out.with_free_vars(declared);
}

Formula Formula::Less(const LinearTerm& lhs, const LinearTerm& rhs) { return Positive(rhs - lhs); }

Formula Formula::LessEq(const LinearTerm& lhs, const LinearTerm& rhs) {
  return Positive(rhs - lhs + LinearTerm(1));
}

Formula Formula::Equal(const LinearTerm& lhs, const LinearTerm& rhs) { return Zero(lhs - rhs); }

Formula Formula::Divides(const Integer& modulus, const LinearTerm& source) {
  if (modulus < 1) throw DomainError("divisibility modulus must be positive, got " + modulus.str());
  std::set<Variable> declared = source.variables();
  LinearTerm t(Mod(source.constant(), modulus));
  for (const auto& [v, c] : source.coefficients()) t.set_coefficient(v, Mod(c, modulus));
  Integer g = Gcd(modulus, t.constant());
  for (const auto& [v, c] : t.coefficients()) g = Gcd(g, c);
  Integer m = modulus / g;
  Integer linear_gcd = m;
  for (const auto& [v, c] : t.coefficients()) linear_gcd = Gcd(linear_gcd, c / g);
  if (linear_gcd > 1 && (t.constant() / g) % linear_gcd != 0) return False().with_free_vars(declared);
  if (g != 1) {
    LinearTerm reduced(t.constant() / g);
    for (const auto& [v, c] : t.coefficients()) reduced.set_coefficient(v, c / g);
    t = std::move(reduced);
  }
  Formula out;
  if (m == 1) {
    out = True();
  } else if (t.is_constant()) {
    out = Bool(t.constant() == 0);
  } else {
    const Integer lead = t.coefficients().begin()->second;
    if (lead != 1 && Gcd(lead, m) == 1) {
      const Integer inv = ModInverse(lead, m);
      LinearTerm scaled(Mod(t.constant() * inv, m));
      for (const auto& [v, c] : t.coefficients()) scaled.set_coefficient(v, Mod(c * inv, m));
      t = std::move(scaled);
    }
    out = Make(FormulaNode{.kind = Kind::kDivides, .term = std::move(t), .modulus = m});
  }
  return out.with_free_vars(declared);
}

Formula Formula::Not(const Formula& f) {
  Formula out;
  switch (f.kind()) {
    case Kind::kTrue:
      out = False();
      break;
    case Kind::kFalse:
      out = True();
      break;
    case Kind::kNot:
      out = f.body();
      break;
    case Kind::kLess:
      // !(0 < e)  <=>  0 < 1 - e
      out = Positive(LinearTerm(1) - f.term());
      break;
    case Kind::kDivides:
      if (f.modulus() == 2) {
        out = Divides(2, f.term() + LinearTerm(1));
        break;
      }
      [[fallthrough]];
    default:
      out = Make(FormulaNode{.kind = Kind::kNot, .children = {f}});
  }
  return out.with_declared_free_vars(f.free_vars());
}

namespace {

// Keeps one bound per linear form among the strict inequalities of a junction.
// Returns false when the junction collapses to its absorbing value.
bool MergeBounds(Kind kind, std::vector<Formula>& flat) {
  const bool conj = kind == Kind::kAnd;
  struct Bounds {
    std::optional<Integer> lo, hi;  // lo <= u, u <= hi
  };
  std::map<LinearTerm, Bounds> bounds;
  std::vector<Formula> rest;
  for (Formula& c : flat) {
    if (c.kind() != Kind::kLess || c.term().is_constant()) {
      rest.push_back(std::move(c));
      continue;
    }
    LinearTerm u = c.term();
    u.set_constant(0);
    const bool positive = u.coefficients().begin()->second > 0;
    if (!positive) u = -u;
    Bounds& b = bounds[u];
    const Integer k = c.term().constant();
    auto tighten = [&](std::optional<Integer>& slot, const Integer& v, bool keep_max) {
      if (!slot || (keep_max == conj ? v > *slot : v < *slot)) slot = v;
    };
    if (positive) {
      tighten(b.lo, 1 - k, true);  // u + k > 0
    } else {
      tighten(b.hi, k - 1, false);  // -u + k > 0
    }
  }
  for (const auto& [u, b] : bounds) {
    if (b.lo && b.hi) {
      if (conj ? *b.lo > *b.hi : *b.lo <= *b.hi + 1) return false;
    }
    if (b.lo) rest.push_back(Formula::Positive(u + LinearTerm(1 - *b.lo)));
    if (b.hi) rest.push_back(Formula::Positive(LinearTerm(*b.hi + 1) - u));
  }
  flat = std::move(rest);
  return true;
}

Formula MakeJunction(Kind kind, std::vector<Formula> children,
                     Formula (*make)(FormulaNode)) {
  const Kind absorbing = kind == Kind::kAnd ? Kind::kFalse : Kind::kTrue;
  const Kind neutral = kind == Kind::kAnd ? Kind::kTrue : Kind::kFalse;
  std::set<Variable> declared;
  std::vector<Formula> flat;
  flat.reserve(children.size());
  bool absorbed = false;
  for (Formula& c : children) {
    declared.insert(c.free_vars().begin(), c.free_vars().end());
    if (c.kind() == absorbing) {
      absorbed = true;
    } else if (c.kind() == kind) {
      for (const Formula& g : c.children()) flat.push_back(g);
    } else if (c.kind() != neutral) {
      flat.push_back(std::move(c));
    }
  }
  if (!absorbed) absorbed = !MergeBounds(kind, flat);
  Formula out;
  if (absorbed) {
    out = absorbing == Kind::kFalse ? Formula::False() : Formula::True();
  } else {
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    for (const Formula& c : flat) {
      if (c.kind() == Kind::kNot && std::binary_search(flat.begin(), flat.end(), c.body())) {
        absorbed = true;
        break;
      }
    }
    if (absorbed) {
      out = absorbing == Kind::kFalse ? Formula::False() : Formula::True();
    } else if (flat.empty()) {
      out = neutral == Kind::kTrue ? Formula::True() : Formula::False();
    } else if (flat.size() == 1) {
      out = flat.front();
    } else {
      out = make(FormulaNode{.kind = kind, .children = std::move(flat)});
    }
  }
  return out.with_free_vars(declared);
}

}  // namespace

Formula Formula::And(std::vector<Formula> children) {
  return MakeJunction(Kind::kAnd, std::move(children), &Formula::Make);
}

Formula Formula::Or(std::vector<Formula> children) {
  return MakeJunction(Kind::kOr, std::move(children), &Formula::Make);
}

Formula Formula::Implies(const Formula& a, const Formula& b) { return Or(Not(a), b); }

Formula Formula::Iff(const Formula& a, const Formula& b) {
  return And(Implies(a, b), Implies(b, a));
}

Formula Formula::MakeBinder(Kind kind, const Variable& var, const Formula& body) {
  std::set<Variable> declared = body.free_vars();
  declared.erase(var);
  if (!body.mentions(var)) return body.with_declared_free_vars(declared);
  Formula out = Make(FormulaNode{.kind = kind, .var = var, .children = {body}});
  return out.with_declared_free_vars(declared);
}

Formula Formula::Exists(const Variable& var, const Formula& body) {
  return MakeBinder(Kind::kExists, var, body);
}

Formula Formula::Forall(const Variable& var, const Formula& body) {
  return MakeBinder(Kind::kForall, var, body);
}

Formula Formula::Exists(const std::vector<Variable>& vars, const Formula& body) {
  Formula out = body;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) out = Exists(*it, out);
  return out;
}

Formula Formula::Forall(const std::vector<Variable>& vars, const Formula& body) {
  Formula out = body;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) out = Forall(*it, out);
  return out;
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_atom() const {
  return kind() == Kind::kLess || kind() == Kind::kEqual || kind() == Kind::kDivides;
}

bool Formula::is_quantifier_free() const { return node_->quantifier_free; }
const LinearTerm& Formula::term() const { return node_->term; }
const Integer& Formula::modulus() const { return node_->modulus; }
const Variable& Formula::bound_variable() const { return node_->var; }
const std::vector<Formula>& Formula::children() const { return node_->children; }
const std::set<Variable>& Formula::free_vars() const { return node_->declared; }
const std::set<Variable>& Formula::occurring_vars() const { return node_->occurring; }
std::size_t Formula::size() const { return node_->size; }

Formula Formula::with_free_vars(const std::set<Variable>& extra) const {
  std::set<Variable> declared = node_->declared;
  declared.insert(node_->occurring.begin(), node_->occurring.end());
  declared.insert(extra.begin(), extra.end());
  return with_declared_free_vars(declared);
}

Formula Formula::with_declared_free_vars(const std::set<Variable>& vars) const {
  std::set<Variable> declared = vars;
  declared.insert(node_->occurring.begin(), node_->occurring.end());
  if (declared == node_->declared) return *this;
  FormulaNode copy = *node_;
  copy.declared = std::move(declared);
  return Formula(std::make_shared<const FormulaNode>(std::move(copy)));
}

std::string Formula::str() const { return Render(*this); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  if (a.is_atom()) {
    if (a.modulus() != b.modulus()) {
      return a.modulus() < b.modulus() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.term() <=> b.term();
  }
  if (auto c = a.bound_variable() <=> b.bound_variable(); c != 0) return c;
  const auto& ca = a.children();
  const auto& cb = b.children();
  for (std::size_t i = 0; i < ca.size() && i < cb.size(); ++i) {
    if (auto c = ca[i] <=> cb[i]; c != 0) return c;
  }
  return ca.size() <=> cb.size();
}

// ---------------------------------------------------------------------------
// Substitution

Variable FreshVariable(const Variable& base, const std::set<Variable>& avoid) {
  Variable stem = base;
  while (!stem.empty() && (std::isdigit(static_cast<unsigned char>(stem.back())) || stem.back() == '_')) {
    stem.pop_back();
  }
  if (stem.empty()) stem = "v";
  if (!avoid.count(stem)) return stem;
  for (std::size_t n = 1;; ++n) {
    Variable candidate = stem + "_" + std::to_string(n);
    if (!avoid.count(candidate)) return candidate;
  }
}

namespace {

Formula RebuildAtom(const Formula& atom, const LinearTerm& term) {
  switch (atom.kind()) {
    case Kind::kLess:
      return Formula::Positive(term);
    case Kind::kEqual:
      return Formula::Zero(term);
    default:
      return Formula::Divides(atom.modulus(), term);
  }
}

Formula SubstituteRec(const Formula& f, const std::map<Variable, LinearTerm>& all) {
  std::map<Variable, LinearTerm> active;
  for (const auto& [v, t] : all) {
    if (f.mentions(v)) active.emplace(v, t);
  }
  if (active.empty()) return f;
  switch (f.kind()) {
    case Kind::kLess:
    case Kind::kEqual:
    case Kind::kDivides:
      return RebuildAtom(f, f.term().substitute(active));
    case Kind::kNot:
      return Formula::Not(SubstituteRec(f.body(), active));
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& c : f.children()) kids.push_back(SubstituteRec(c, active));
      return f.kind() == Kind::kAnd ? Formula::And(std::move(kids)) : Formula::Or(std::move(kids));
    }
    case Kind::kExists:
    case Kind::kForall: {
      Variable var = f.bound_variable();
      std::set<Variable> incoming;
      for (const auto& [v, t] : active) {
        for (const auto& [w, c] : t.coefficients()) incoming.insert(w);
      }
      if (incoming.count(var)) {
        std::set<Variable> avoid = incoming;
        avoid.insert(f.body().occurring_vars().begin(), f.body().occurring_vars().end());
        for (const auto& [v, t] : active) avoid.insert(v);
        Variable fresh = FreshVariable(var, avoid);
        active.emplace(var, LinearTerm::Var(fresh));
        var = fresh;
      }
      Formula body = SubstituteRec(f.body(), active);
      return f.kind() == Kind::kExists ? Formula::Exists(var, body) : Formula::Forall(var, body);
    }
    default:
      return f;
  }
}

}  // namespace

Formula Substitute(const Formula& f, const std::map<Variable, LinearTerm>& replacements) {
  std::set<Variable> declared;
  for (const Variable& v : f.free_vars()) {
    auto it = replacements.find(v);
    if (it == replacements.end()) {
      declared.insert(v);
    } else {
      for (const auto& [w, c] : it->second.coefficients()) declared.insert(w);
    }
  }
  return SubstituteRec(f, replacements).with_declared_free_vars(declared);
}

Formula Substitute(const Formula& f, const Variable& var, const LinearTerm& replacement) {
  return Substitute(f, std::map<Variable, LinearTerm>{{var, replacement}});
}

Formula RenameFree(const Formula& f, const std::map<Variable, Variable>& renaming) {
  std::map<Variable, LinearTerm> replacements;
  for (const auto& [from, to] : renaming) replacements.emplace(from, LinearTerm::Var(to));
  return Substitute(f, replacements);
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

bool MatchesPrefix(const Variable& name, const std::string& prefix) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return false;
  return std::all_of(name.begin() + prefix.size(), name.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Formula CanonicalRec(const Formula& f, std::size_t depth, const std::string& prefix,
                     const std::map<Variable, LinearTerm>& renaming) {
  switch (f.kind()) {
    case Kind::kTrue:
    case Kind::kFalse:
      return f;
    case Kind::kLess:
    case Kind::kEqual:
    case Kind::kDivides:
      return RebuildAtom(f, f.term().substitute(renaming));
    case Kind::kNot:
      return Formula::Not(CanonicalRec(f.body(), depth, prefix, renaming));
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& c : f.children()) kids.push_back(CanonicalRec(c, depth, prefix, renaming));
      return f.kind() == Kind::kAnd ? Formula::And(std::move(kids)) : Formula::Or(std::move(kids));
    }
    case Kind::kExists:
    case Kind::kForall: {
      const Variable name = prefix + std::to_string(depth);
      auto inner = renaming;
      inner[f.bound_variable()] = LinearTerm::Var(name);
      Formula body = CanonicalRec(f.body(), depth + 1, prefix, inner);
      if (!body.mentions(name)) {
        // Binder vanished under normalization; number the inner binders from
        // this depth instead. The placeholder cannot collide with any name
        // the grammar accepts.
        inner[f.bound_variable()] = LinearTerm::Var("$vacuous");
        body = CanonicalRec(f.body(), depth, prefix, inner);
        return body;
      }
      return f.kind() == Kind::kExists ? Formula::Exists(name, body) : Formula::Forall(name, body);
    }
  }
  return f;
}

}  // namespace

Formula Canonicalize(const Formula& f) {
  std::set<Variable> names = f.free_vars();
  names.insert(f.occurring_vars().begin(), f.occurring_vars().end());
  std::string prefix = "q";
  while (std::any_of(names.begin(), names.end(),
                     [&](const Variable& n) { return MatchesPrefix(n, prefix); })) {
    prefix += "q";
  }
  return CanonicalRec(f, 0, prefix, {}).with_declared_free_vars(f.free_vars());
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

constexpr int kPrecOr = 2;
constexpr int kPrecAnd = 3;
constexpr int kPrecUnary = 4;

int Precedence(const Formula& f) {
  switch (f.kind()) {
    case Kind::kOr:
      return kPrecOr;
    case Kind::kAnd:
      return kPrecAnd;
    default:
      return kPrecUnary;
  }
}

// Splits e into (P, N) with e = P - N and both sides nonnegative.
std::pair<LinearTerm, LinearTerm> SplitSigns(const LinearTerm& e) {
  LinearTerm pos, neg;
  for (const auto& [v, c] : e.coefficients()) {
    if (c > 0) {
      pos.set_coefficient(v, c);
    } else {
      neg.set_coefficient(v, -c);
    }
  }
  if (e.constant() > 0) {
    pos.set_constant(e.constant());
  } else {
    neg.set_constant(-e.constant());
  }
  return {pos, neg};
}

std::string RenderAt(const Formula& f, int required);

std::string RenderNode(const Formula& f) {
  switch (f.kind()) {
    case Kind::kTrue:
      return "true";
    case Kind::kFalse:
      return "false";
    case Kind::kLess: {
      auto [pos, neg] = SplitSigns(f.term());
      return neg.render_nonnegative() + " < " + pos.render_nonnegative();
    }
    case Kind::kEqual: {
      auto [pos, neg] = SplitSigns(f.term());
      return pos.render_nonnegative() + " = " + neg.render_nonnegative();
    }
    case Kind::kDivides:
      return "Div_" + f.modulus().str() + "(" + f.term().render_nonnegative() + ")";
    case Kind::kNot:
      return "!" + RenderAt(f.body(), kPrecUnary);
    case Kind::kAnd:
    case Kind::kOr: {
      const char* sep = f.kind() == Kind::kAnd ? " & " : " | ";
      std::string out;
      for (const Formula& c : f.children()) {
        if (!out.empty()) out += sep;
        out += RenderAt(c, Precedence(f) + 1);
      }
      return out;
    }
    case Kind::kExists:
      return "exists " + f.bound_variable() + ". " + RenderAt(f.body(), kPrecUnary);
    case Kind::kForall:
      return "forall " + f.bound_variable() + ". " + RenderAt(f.body(), kPrecUnary);
  }
  return "?";
}

std::string RenderAt(const Formula& f, int required) {
  std::string s = RenderNode(f);
  if (Precedence(f) < required) return "(" + s + ")";
  return s;
}

}  // namespace

std::string Render(const Formula& f) { return RenderNode(f); }

}  // namespace upw
