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

#include "upw/qe.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "upw/error.hpp"

namespace upw {
namespace {

using Kind = Formula::Kind;

// Negations end up only in front of = and Div atoms.
Formula Nnf(const Formula& f, bool negate = false) {
  switch (f.kind()) {
    case Kind::kTrue:
    case Kind::kFalse:
    case Kind::kLess:
    case Kind::kEqual:
    case Kind::kDivides:
      return negate ? Formula::Not(f) : f;
    case Kind::kNot:
      return Nnf(f.body(), !negate);
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& c : f.children()) kids.push_back(Nnf(c, negate));
      const bool conj = (f.kind() == Kind::kAnd) != negate;
      return conj ? Formula::And(std::move(kids)) : Formula::Or(std::move(kids));
    }
    default:
      throw DomainError("negation normal form expects a quantifier-free formula");
  }
}

// An atom mentioning the eliminated variable, rescaled so that the variable
// X = l*x has coefficient +-1.
struct Unified {
  Kind kind = Kind::kLess;
  int sign = 1;
  LinearTerm rest;
  Integer modulus = 0;
};

class Eliminator {
 public:
  explicit Eliminator(const QeOptions& options) : options_(options) {}

  Formula Run(const Formula& f) {
    switch (f.kind()) {
      case Kind::kTrue:
      case Kind::kFalse:
      case Kind::kLess:
      case Kind::kEqual:
      case Kind::kDivides:
        return f;
      case Kind::kNot:
        return Formula::Not(Run(f.body()));
      case Kind::kAnd:
      case Kind::kOr: {
        std::vector<Formula> kids;
        kids.reserve(f.children().size());
        for (const Formula& c : f.children()) kids.push_back(Run(c));
        return f.kind() == Kind::kAnd ? Formula::And(std::move(kids)) : Formula::Or(std::move(kids));
      }
      case Kind::kExists:
        return ExistsQf(f.bound_variable(), Nnf(Run(f.body())));
      case Kind::kForall:
        return Formula::Not(ExistsQf(f.bound_variable(), Nnf(Run(f.body()), true)));
    }
    return f;
  }

  // Eliminates x from exists x. psi, psi quantifier-free in NNF.
  Formula ExistsQf(const Variable& x, const Formula& psi) {
    if (!psi.mentions(x)) return psi;
    if (psi.kind() == Kind::kOr) {
      std::vector<Formula> parts;
      for (const Formula& c : psi.children()) parts.push_back(ExistsQf(x, c));
      return Formula::Or(std::move(parts));
    }
    if (psi.kind() != Kind::kAnd) return Core(x, psi);

    std::vector<Formula> outside, inside;
    for (const Formula& c : psi.children()) (c.mentions(x) ? inside : outside).push_back(c);

    // Split on a disjunctive conjunct while the case count stays small.
    std::size_t cases = 1;
    const Formula* split = nullptr;
    for (const Formula& c : inside) {
      if (c.kind() == Kind::kOr) {
        cases *= c.children().size();
        if (split == nullptr) split = &c;
      }
    }
    Formula result;
    if (split != nullptr && cases <= kMaxSplitCases) {
      std::vector<Formula> rest;
      for (const Formula& c : inside) {
        if (&c != split) rest.push_back(c);
      }
      std::vector<Formula> branches;
      for (const Formula& d : split->children()) {
        std::vector<Formula> conj = rest;
        conj.push_back(d);
        branches.push_back(ExistsQf(x, Formula::And(std::move(conj))));
      }
      result = Formula::Or(std::move(branches));
    } else {
      result = Core(x, Formula::And(std::move(inside)));
    }
    outside.push_back(result);
    return Formula::And(std::move(outside));
  }

 private:
  static constexpr std::size_t kMaxSplitCases = 64;
  static constexpr unsigned kMaxPeriod = 1u << 16;

  void CheckBits(const LinearTerm& t) const {
    if (t.max_bits() > options_.max_bits) {
      throw ResourceLimitError("coefficient exceeds " + std::to_string(options_.max_bits) +
                               " bits during quantifier elimination");
    }
  }

  // Rewrites each literal mentioning x through `on_atom(atom, negated)`.
  Formula MapLiterals(const Formula& f, const Variable& x,
                      const std::function<Formula(const Formula&, bool)>& on_atom) const {
    if (!f.mentions(x)) return f;
    switch (f.kind()) {
      case Kind::kLess:
      case Kind::kEqual:
      case Kind::kDivides:
        return on_atom(f, false);
      case Kind::kNot:
        return on_atom(f.body(), true);
      case Kind::kAnd:
      case Kind::kOr: {
        std::vector<Formula> kids;
        kids.reserve(f.children().size());
        for (const Formula& c : f.children()) kids.push_back(MapLiterals(c, x, on_atom));
        return f.kind() == Kind::kAnd ? Formula::And(std::move(kids)) : Formula::Or(std::move(kids));
      }
      default:
        return f;
    }
  }

  void CollectAtoms(const Formula& f, const Variable& x, std::vector<std::pair<Formula, bool>>& out,
                    bool negated = false) const {
    if (!f.mentions(x)) return;
    if (f.is_atom()) {
      out.emplace_back(f, negated);
    } else if (f.kind() == Kind::kNot) {
      CollectAtoms(f.body(), x, out, !negated);
    } else {
      for (const Formula& c : f.children()) CollectAtoms(c, x, out, negated);
    }
  }

  Formula EqualityShortcut(const Variable& x, const Formula& psi, const Formula& eq) const {
    Integer a = eq.term().coefficient(x);
    LinearTerm s = eq.term().without(x);
    if (a < 0) {
      a = -a;
      s = -s;
    }
    // x = -s / a
    const LinearTerm minus_s = -s;
    CheckBits(minus_s);
    auto on_atom = [&](const Formula& atom, bool negated) {
      const Integer c = atom.term().coefficient(x);
      const LinearTerm value = minus_s * c + atom.term().without(x) * a;
      CheckBits(value);
      Formula out;
      switch (atom.kind()) {
        case Kind::kLess:
          out = Formula::Positive(value);
          break;
        case Kind::kEqual:
          out = Formula::Zero(value);
          break;
        default:
          out = Formula::Divides(atom.modulus() * a, value);
      }
      return negated ? Formula::Not(out) : out;
    };
    std::vector<Formula> conj;
    if (psi.kind() == Kind::kAnd) {
      bool skipped = false;
      for (const Formula& c : psi.children()) {
        if (!skipped && c == eq) {
          skipped = true;
          continue;
        }
        conj.push_back(MapLiterals(c, x, on_atom));
      }
    }
    conj.push_back(Formula::Divides(a, s));
    conj.push_back(Formula::Positive(LinearTerm(1) - s));
    return Formula::And(std::move(conj));
  }

  // In a conjunction of literals with no upper bound on x the solutions form
  // a union of infinite progressions, so finitely many excluded points do
  // not matter.
  Formula DropDisequalities(const Variable& x, const Formula& psi) const {
    std::vector<Formula> kept;
    bool dropped = false;
    for (const Formula& c : psi.children()) {
      if (!c.mentions(x)) {
        kept.push_back(c);
        continue;
      }
      const bool negated = c.kind() == Kind::kNot;
      const Formula& atom = negated ? c.body() : c;
      if (!atom.is_atom()) return psi;
      if (atom.kind() == Kind::kLess && atom.term().coefficient(x) < 0) return psi;
      if (atom.kind() == Kind::kEqual && !negated) return psi;
      if (atom.kind() == Kind::kEqual) {
        dropped = true;
        continue;
      }
      kept.push_back(c);
    }
    return dropped ? Formula::And(std::move(kept)) : psi;
  }

  // Least constant c with x <= c implied by a top-level conjunct, if any.
  static std::optional<Integer> ConstantCeiling(const Variable& x, const Formula& psi) {
    std::optional<Integer> top;
    auto consider = [&](const Formula& c) {
      const bool negated = c.kind() == Kind::kNot;
      const Formula& atom = negated ? c.body() : c;
      if (atom.kind() != Kind::kLess || atom.term().variables().size() != 1) return;
      const Integer a = atom.term().coefficient(x);
      const Integer& r = atom.term().constant();
      std::optional<Integer> bound;
      if (!negated && a < 0) bound = FloorDiv(r - 1, -a);  // a*x + r > 0
      if (negated && a > 0) bound = FloorDiv(-r, a);       // a*x + r <= 0
      if (bound && (!top || *bound < *top)) top = bound;
    };
    if (psi.kind() == Kind::kAnd) {
      for (const Formula& c : psi.children()) consider(c);
    } else {
      consider(psi);
    }
    return top;
  }

  Formula Core(const Variable& x, const Formula& psi) {
    // Equality on x among the top-level conjuncts: substitute it away.
    const Formula* best = nullptr;
    auto consider = [&](const Formula& c) {
      if (c.kind() == Kind::kEqual && c.mentions(x)) {
        if (best == nullptr || abs(c.term().coefficient(x)) < abs(best->term().coefficient(x))) best = &c;
      }
    };
    if (psi.kind() == Kind::kAnd) {
      for (const Formula& c : psi.children()) consider(c);
    } else {
      consider(psi);
    }
    if (best != nullptr) return EqualityShortcut(x, psi, *best);
    if (psi.kind() == Kind::kAnd) {
      const Formula pruned = DropDisequalities(x, psi);
      if (!(pruned == psi)) return ExistsQf(x, pruned);
    }

    std::vector<std::pair<Formula, bool>> atoms;
    CollectAtoms(psi, x, atoms);
    Integer l = 1;
    for (const auto& [atom, negated] : atoms) l = Lcm(l, atom.term().coefficient(x));

    std::map<Formula, Unified> unified;
    Integer period = l;
    std::set<LinearTerm> lower{LinearTerm(-1)};  // from X >= 0
    std::set<LinearTerm> upper;
    for (const auto& [atom, negated] : atoms) {
      const Integer a = atom.term().coefficient(x);
      const LinearTerm r = atom.term().without(x);
      Unified u;
      u.kind = atom.kind();
      if (atom.kind() == Kind::kDivides) {
        const Integer k = l / a;
        u.rest = r * k;
        u.modulus = atom.modulus() * k;
        period = Lcm(period, u.modulus);
      } else {
        const Integer k = l / abs(a);
        u.sign = a < 0 ? -1 : 1;
        u.rest = r * k;
      }
      CheckBits(u.rest);
      // Bounds on X: sign*X + rest (> | = | !=) 0.
      if (atom.kind() != Kind::kDivides) {
        const LinearTerm root = u.sign > 0 ? -u.rest : u.rest;  // the value where sign*X + rest = 0
        if (atom.kind() == Kind::kLess) {
          if (u.sign > 0) {
            lower.insert(root);
          } else {
            upper.insert(root);
          }
        } else if (!negated) {
          lower.insert(root - LinearTerm(1));
          upper.insert(root + LinearTerm(1));
        } else {
          lower.insert(root);
          upper.insert(root);
        }
      }
      unified.emplace(atom, std::move(u));
    }
    if (period > kMaxPeriod) {
      throw ResourceLimitError("period " + ToString(period) + " is too large to enumerate");
    }

    auto instantiate = [&](const LinearTerm& value) {
      return [&, value](const Formula& atom, bool negated) {
        const Unified& u = unified.at(atom);
        Formula out;
        switch (u.kind) {
          case Kind::kLess:
            out = Formula::Positive(value * u.sign + u.rest);
            break;
          case Kind::kEqual:
            out = Formula::Zero(value * u.sign + u.rest);
            break;
          default:
            out = Formula::Divides(u.modulus, value + u.rest);
        }
        return negated ? Formula::Not(out) : out;
      };
    };
    auto substituted = [&](const LinearTerm& value) {
      CheckBits(value);
      return Formula::And({MapLiterals(psi, x, instantiate(value)), Formula::Divides(l, value),
                           Formula::Positive(value + LinearTerm(1))});
    };

    const unsigned long long steps = period.convert_to<unsigned long long>();
    const std::size_t points = std::min(lower.size(), upper.size() + 1);
    if (const std::optional<Integer> top = ConstantCeiling(x, psi);
        top && *top < Integer(steps) * Integer(points) + 1) {
      // x ranges over 0..top: enumerate.
      std::vector<Formula> values;
      for (Integer n = 0; n <= *top; ++n) {
        values.push_back(MapLiterals(psi, x, [&](const Formula& atom, bool negated) {
          const Formula out = Substitute(atom, x, LinearTerm(n));
          return negated ? Formula::Not(out) : out;
        }));
        if (values.back().is_true()) return Formula::True();
      }
      return Formula::Or(std::move(values));
    }

    std::vector<Formula> disjuncts;
    if (upper.size() + 1 < lower.size()) {
      // Upper-bound variant: X -> +infinity projection plus test points a - j.
      auto at_infinity = [&](const LinearTerm& value) {
        return [&, value](const Formula& atom, bool negated) {
          const Unified& u = unified.at(atom);
          if (u.kind == Kind::kLess) return Formula::Bool(u.sign > 0);
          if (u.kind == Kind::kEqual) return Formula::Bool(negated);
          Formula out = Formula::Divides(u.modulus, value + u.rest);
          return negated ? Formula::Not(out) : out;
        };
      };
      for (unsigned long long j = 1; j <= steps; ++j) {
        const LinearTerm value(-Integer(j));
        disjuncts.push_back(
            Formula::And(MapLiterals(psi, x, at_infinity(value)), Formula::Divides(l, value)));
        if (disjuncts.back().is_true()) return Formula::True();
      }
      for (const LinearTerm& b : upper) {
        for (unsigned long long j = 1; j <= steps; ++j) {
          disjuncts.push_back(substituted(b - LinearTerm(Integer(j))));
          if (disjuncts.back().is_true()) return Formula::True();
        }
      }
    } else {
      // Lower-bound variant; the -infinity projection is false because X >= 0.
      for (const LinearTerm& b : lower) {
        for (unsigned long long j = 1; j <= steps; ++j) {
          disjuncts.push_back(substituted(b + LinearTerm(Integer(j))));
          if (disjuncts.back().is_true()) return Formula::True();
        }
      }
    }
    return Formula::Or(std::move(disjuncts));
  }

  const QeOptions& options_;
};

}  // namespace

Formula Eliminate(const Formula& f, const QeOptions& options) {
  if (f.is_quantifier_free()) return Canonicalize(f);
  Eliminator eliminator(options);
  return Canonicalize(eliminator.Run(f).with_declared_free_vars(f.free_vars()));
}

bool Decide(const Formula& sentence, const QeOptions& options) {
  if (!sentence.free_vars().empty()) {
    throw DomainError("decide expects a sentence; free variable '" + *sentence.free_vars().begin() + "'");
  }
  const Formula result = Eliminate(sentence, options);
  if (!result.is_true() && !result.is_false()) {
    throw InvariantViolation("elimination of a sentence left '" + Render(result) + "'");
  }
  return result.is_true();
}

// ---------------------------------------------------------------------------
// x-normal form

namespace {

using Literals = std::vector<Formula>;

std::vector<Literals> Dnf(const Formula& f) {
  switch (f.kind()) {
    case Kind::kTrue:
      return {Literals{}};
    case Kind::kFalse:
      return {};
    case Kind::kOr: {
      std::vector<Literals> out;
      for (const Formula& c : f.children()) {
        auto part = Dnf(c);
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
    case Kind::kAnd: {
      std::vector<Literals> out{Literals{}};
      for (const Formula& c : f.children()) {
        std::vector<Literals> next;
        for (const Literals& left : out) {
          for (const Literals& right : Dnf(c)) {
            Literals merged = left;
            merged.insert(merged.end(), right.begin(), right.end());
            next.push_back(std::move(merged));
          }
        }
        out = std::move(next);
      }
      return out;
    }
    default:
      return {Literals{f}};
  }
}

// Negated atoms on x become disjunctions of positive atoms.
Formula PositiveOnX(const Formula& f, const Variable& x) {
  if (!f.mentions(x)) return f;
  switch (f.kind()) {
    case Kind::kNot: {
      const Formula& atom = f.body();
      if (atom.kind() == Kind::kEqual) {
        return Formula::Or(Formula::Positive(atom.term()), Formula::Positive(-atom.term()));
      }
      std::vector<Formula> residues;
      for (Integer r = 1; r < atom.modulus(); ++r) {
        residues.push_back(Formula::Divides(atom.modulus(), atom.term() + LinearTerm(r)));
      }
      return Formula::Or(std::move(residues));
    }
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<Formula> kids;
      for (const Formula& c : f.children()) kids.push_back(PositiveOnX(c, x));
      return f.kind() == Kind::kAnd ? Formula::And(std::move(kids)) : Formula::Or(std::move(kids));
    }
    default:
      return f;
  }
}

}  // namespace

Integer XNormalForm::modulus_lcm() const {
  Integer l = 1;
  for (const Integer& m : moduli) l = Lcm(l, m);
  return l;
}

Formula XNormalForm::to_formula() const {
  const LinearTerm scaled = LinearTerm::Var(variable, scale);
  std::vector<Formula> parts;
  for (const XConjunct& conj : disjuncts) {
    std::vector<Formula> lits{conj.residual};
    for (const XAtom& a : conj.atoms) {
      switch (a.shape) {
        case XAtom::Shape::kBelow:
          lits.push_back(Formula::Less(scaled, a.rest));
          break;
        case XAtom::Shape::kAbove:
          lits.push_back(Formula::Less(a.rest, scaled));
          break;
        case XAtom::Shape::kEqual:
          lits.push_back(Formula::Equal(scaled, a.rest));
          break;
        case XAtom::Shape::kDivides:
          lits.push_back(Formula::Divides(a.modulus, scaled + a.rest));
          break;
      }
    }
    parts.push_back(Formula::And(std::move(lits)));
  }
  return Formula::Or(std::move(parts));
}

namespace {

void XLiterals(const Formula& f, const Variable& x, std::vector<Formula>& out) {
  if (f.is_atom()) {
    if (f.mentions(x)) out.push_back(f);
    return;
  }
  for (const Formula& c : f.children()) XLiterals(c, x, out);
}

}  // namespace

Integer XModulusLcm(const Formula& f, const Variable& x) {
  if (!f.is_quantifier_free()) throw DomainError("x-normal form expects a quantifier-free formula");
  std::vector<Formula> lits;
  XLiterals(PositiveOnX(Nnf(f), x), x, lits);
  Integer scale = 1;
  for (const Formula& lit : lits) scale = Lcm(scale, lit.term().coefficient(x));
  Integer l = scale;
  for (const Formula& lit : lits) {
    if (lit.kind() == Kind::kDivides) l = Lcm(l, lit.modulus() * (scale / lit.term().coefficient(x)));
  }
  return l;
}

XNormalForm ToXNormalForm(const Formula& f, const Variable& x) {
  if (!f.is_quantifier_free()) throw DomainError("x-normal form expects a quantifier-free formula");
  const std::vector<Literals> dnf = Dnf(PositiveOnX(Nnf(f), x));
  XNormalForm out;
  out.variable = x;
  for (const Literals& conj : dnf) {
    for (const Formula& lit : conj) {
      if (lit.is_atom() && lit.mentions(x)) out.scale = Lcm(out.scale, lit.term().coefficient(x));
    }
  }
  const Integer& l = out.scale;
  for (const Literals& conj : dnf) {
    XConjunct xc;
    std::vector<Formula> residual;
    for (const Formula& lit : conj) {
      if (!lit.mentions(x)) {
        residual.push_back(lit);
        continue;
      }
      const Integer a = lit.term().coefficient(x);
      const LinearTerm r = lit.term().without(x);
      XAtom atom;
      if (lit.kind() == Kind::kDivides) {
        const Integer k = l / a;
        atom.shape = XAtom::Shape::kDivides;
        atom.rest = r * k;
        atom.modulus = lit.modulus() * k;
      } else {
        const Integer k = l / abs(a);
        const bool positive = a > 0;
        // positive: X + k r (> | =) 0 ; negative: -X + k r (> | =) 0
        if (lit.kind() == Kind::kLess) {
          atom.shape = positive ? XAtom::Shape::kAbove : XAtom::Shape::kBelow;
        } else {
          atom.shape = XAtom::Shape::kEqual;
        }
        atom.rest = positive ? -(r * k) : r * k;
      }
      xc.atoms.push_back(std::move(atom));
    }
    if (l > 1) xc.atoms.push_back(XAtom{XAtom::Shape::kDivides, LinearTerm(), l});
    for (const XAtom& a : xc.atoms) {
      if (a.shape == XAtom::Shape::kDivides) out.moduli.insert(a.modulus);
    }
    xc.residual = Formula::And(std::move(residual));
    out.disjuncts.push_back(std::move(xc));
  }
  return out;
}

}  // namespace upw
