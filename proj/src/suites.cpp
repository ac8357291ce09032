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

#include "upw/suites.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "upw/applications.hpp"
#include "upw/error.hpp"
#include "upw/evaluate.hpp"
#include "upw/parser.hpp"
#include "upw/qe.hpp"
#include "upw/random.hpp"

namespace upw {
namespace {

constexpr std::size_t kMaxReported = 5;

using Kind = Formula::Kind;

// Runs one random instance; an exception counts as a failed check.
template <class Fn>
void Instance(SuiteResult& r, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    r.Check(false, [&] { return std::string("exception: ") + e.what(); });
  }
}

std::vector<Variable> Coords(std::size_t n, const std::string& stem = "x") {
  std::vector<Variable> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

Assignment RandomAssignment(Rng& rng, const std::set<Variable>& vars, long long hi) {
  Assignment a;
  for (const Variable& v : vars) a[v] = rng.uniform(0, hi);
  return a;
}

// lcm of the moduli and the largest constant magnitude in f.
void Stats(const Formula& f, Integer& lcm, Integer& max_constant) {
  if (f.is_atom()) {
    const Integer c = abs(f.term().constant());
    if (c > max_constant) max_constant = c;
    for (const auto& [v, k] : f.term().coefficients()) {
      if (abs(k) > max_constant) max_constant = abs(k);
    }
    if (f.kind() == Kind::kDivides) lcm = Lcm(lcm, f.modulus());
    return;
  }
  for (const Formula& c : f.children()) Stats(c, lcm, max_constant);
}

std::size_t QuantifierCount(const Formula& f) {
  std::size_t n = f.is_quantifier() ? 1 : 0;
  for (const Formula& c : f.children()) n += QuantifierCount(c);
  return n;
}

// Enumerates every tuple in [0, hi]^vars.
template <class Fn>
void ForEachAssignment(const std::vector<Variable>& vars, long long hi, Fn&& fn) {
  Assignment a;
  for (const Variable& v : vars) a[v] = 0;
  for (;;) {
    fn(a);
    std::size_t k = 0;
    for (; k < vars.size(); ++k) {
      Integer& slot = a[vars[k]];
      if (slot < hi) {
        ++slot;
        break;
      }
      slot = 0;
    }
    if (k == vars.size()) return;
  }
}

FormulaShape CoordinateShape(std::size_t n, int blocks = 1) {
  FormulaShape shape;
  shape.free_vars = Coords(n);
  shape.max_coefficient = 3;
  shape.max_constant = 5;
  shape.quantifier_blocks = blocks;
  shape.block_size = 1;
  shape.qf_depth = 2;
  return shape;
}

bool Member(const UltrapowerModel& m, const Formula& f, std::size_t n) {
  return MemberN(m.oracle(), IndexedSetFormula(f, Coords(n)));
}

std::vector<GeneralizedTerm> Generators(const std::vector<IndexLabel>& labels) {
  std::vector<GeneralizedTerm> out;
  for (const IndexLabel& i : labels) out.push_back(GeneralizedTerm::Generator(i));
  return out;
}

GeneralizedTerm AnyTerm(Rng& rng, long long lo, long long hi, std::size_t max_arity, long long den = 1) {
  const std::size_t arity = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(max_arity)));
  const std::vector<IndexLabel> labels = RandomLabels(rng, arity, lo, hi, den);
  if (rng.chance(0.3)) return RandomStandardTerm(rng, labels, rng.uniform(0, 6));
  if (arity > 0 && rng.chance(0.15)) return GeneralizedTerm::Generator(rng.pick(labels));
  return RandomTerm(rng, labels);
}

std::string Show(const Formula& f) { return Render(f); }

std::string ShowTerms(const std::vector<GeneralizedTerm>& ts) {
  std::string out;
  for (const GeneralizedTerm& t : ts) out += (out.empty() ? "" : ", ") + t.str();
  return out;
}

const std::vector<OrderAutomorphism>& SuiteAutomorphisms() {
  static const std::vector<OrderAutomorphism> maps = {
      OrderAutomorphism::Translation(1),
      OrderAutomorphism::Parse("pl:0;1,1;2,1"),
      OrderAutomorphism::Parse("pl:0;1,-1;1/2,-1"),
  };
  return maps;
}

// ---------------------------------------------------------------------------
// logic kernel

SuiteResult KernelRoundTrip(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  FormulaShape shape;
  shape.quantifier_blocks = 3;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const Formula f = Canonicalize(RandomFormula(rng, shape));
      const std::string text = Render(f);
      const Formula g = Parse(text);
      r.Check(g == f, [&] { return text + " reparses as " + Render(g); });
    });
  }
  return r;
}

SuiteResult KernelConnectives(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  FormulaShape shape;
  shape.quantifier_blocks = 1;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const Formula f = RandomFormula(rng, shape);
      const Formula g = RandomFormula(rng, shape);
      for (int s = 0; s < 5; ++s) {
        const Assignment a = RandomAssignment(rng, {"a", "b"}, 12);
        const Integer bound = 12;
        const bool ef = Evaluate(f, a, bound);
        const bool eg = Evaluate(g, a, bound);
        r.Check(Evaluate(Formula::Not(f), a, bound) == !ef, [&] { return "negation of " + Show(f); });
        r.Check(Evaluate(Formula::And(f, g), a, bound) == (ef && eg),
                [&] { return "conjunction of " + Show(f) + " and " + Show(g); });
        r.Check(Evaluate(Formula::Or(f, g), a, bound) == (ef || eg),
                [&] { return "disjunction of " + Show(f) + " and " + Show(g); });
      }
    });
  }
  return r;
}

SuiteResult KernelSubstitution(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  FormulaShape shape;
  shape.quantifier_blocks = 2;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const Formula f = RandomFormula(rng, shape);
      const long long n = rng.uniform(0, 10);
      Assignment a = RandomAssignment(rng, {"b"}, 10);
      const Integer bound = 8;
      const bool substituted = Evaluate(Substitute(f, "a", LinearTerm(Integer(n))), a, bound);
      a["a"] = n;
      r.Check(substituted == Evaluate(f, a, bound), [&] { return Show(f) + " at a = " + std::to_string(n); });
    });
  }
  return r;
}

// ---------------------------------------------------------------------------
// quantifier elimination

SuiteResult QeDifferential(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  FormulaShape shape;
  shape.quantifier_blocks = 3;
  shape.block_size = 1;
  const int slack = 3;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const Formula f = RandomGuardedFormula(rng, shape, slack);
      const Formula q = Eliminate(f);
      Integer lcm = 1, spread = 0;
      Stats(f, lcm, spread);
      const Integer certified = std::max<Integer>(24, 2 * lcm + spread + 1);
      const long long hi = certified.convert_to<long long>();
      const Integer bound = certified + slack * QuantifierCount(f);
      const BoundedEvaluator direct(f), reduced(q);
      bool agree = true;
      Assignment witness;
      ForEachAssignment(shape.free_vars, hi, [&](const Assignment& a) {
        if (agree && reduced(a) != direct(a, bound)) {
          agree = false;
          witness = a;
        }
      });
      r.Check(agree, [&] {
        std::string at;
        for (const auto& [v, x] : witness) at += " " + v + "=" + ToString(x);
        return Show(f) + " vs " + Show(q) + " at" + at;
      });
    });
  }
  return r;
}

SuiteResult QeIdempotent(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  FormulaShape shape;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const Formula q = Eliminate(RandomFormula(rng, shape));
      const Formula again = Eliminate(q);
      r.Check(q.is_quantifier_free() && again == q, [&] { return Show(q) + " became " + Show(again); });
    });
  }
  return r;
}

SuiteResult QeExcludedMiddle(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  FormulaShape shape;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const Formula s = RandomSentence(rng, shape);
      r.Check(!Decide(Formula::And(s, Formula::Not(s))), [&] { return "s & !s holds for " + Show(s); });
      r.Check(Decide(Formula::Or(s, Formula::Not(s))), [&] { return "s | !s fails for " + Show(s); });
      r.Check(Decide(s) != Decide(Formula::Not(s)), [&] { return "s and !s decide alike for " + Show(s); });
    });
  }
  return r;
}

SuiteResult QeNormalForm(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  FormulaShape shape;
  shape.free_vars = {"x", "y"};
  shape.quantifier_blocks = 0;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const Formula f = RandomQuantifierFree(rng, {"x", "y"}, shape, 2).with_free_vars({"x", "y"});
      const XNormalForm nf = ToXNormalForm(f, "x");
      const Formula g = nf.to_formula();
      bool agree = true;
      ForEachAssignment({"x", "y"}, 30, [&](const Assignment& a) { agree = agree && Evaluate(f, a) == Evaluate(g, a); });
      bool shaped = true;
      std::set<Integer> moduli;
      for (const XConjunct& c : nf.disjuncts) {
        shaped = shaped && !c.residual.mentions("x");
        for (const XAtom& atom : c.atoms) {
          shaped = shaped && !atom.rest.mentions("x");
          if (atom.shape == XAtom::Shape::kDivides) moduli.insert(atom.modulus);
        }
      }
      r.Check(agree && shaped && moduli == nf.moduli, [&] { return Show(f) + " vs " + Show(g); });
    });
  }
  return r;
}

// ---------------------------------------------------------------------------
// ultrafilter

SuiteResult UltrafilterAxioms(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  for (std::size_t n = 1; n <= 3; ++n) {
    const FormulaShape shape = CoordinateShape(n);
    const std::vector<Variable> xs = Coords(n);
    for (std::size_t k = 0; k < ctx.count; ++k) {
      Instance(r, [&] {
        const Formula f = RandomFormula(rng, shape);
        const Formula g = RandomFormula(rng, shape);
        const bool mf = Member(m, f, n);
        const bool mg = Member(m, g, n);
        auto where = [&] { return "dimension " + std::to_string(n) + ": " + Show(f) + " ; " + Show(g); };
        r.Check(Member(m, Formula::And(f, g), n) == (mf && mg), where);
        r.Check(Member(m, Formula::Not(f), n) == !mf, where);
        r.Check(!mf || Member(m, Formula::Or(f, g), n), where);
        if (mf && Decide(Formula::Forall(xs, Formula::Implies(f, g)))) r.Check(mg, where);
      });
    }
  }
  return r;
}

SuiteResult UltrafilterNonprincipal(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
      std::vector<Formula> point;
      std::string text;
      for (const Variable& x : Coords(n)) {
        const long long v = rng.uniform(0, 1000);
        point.push_back(Formula::Equal(LinearTerm::Var(x), LinearTerm(Integer(v))));
        text += " " + x + "=" + std::to_string(v);
      }
      r.Check(!Member(m, Formula::And(std::move(point)), n), [&] { return "singleton" + text + " is large"; });
      r.Check(Member(m, Formula::True(), n) && !Member(m, Formula::False(), n), [] { return "true/false"; });
    });
  }
  return r;
}

SuiteResult UltrafilterAmenability(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrafilterOracle& u = ctx.model->oracle();
  FormulaShape shape;
  shape.free_vars = {"x", "y"};
  shape.quantifier_blocks = 1;
  shape.block_size = 1;
  shape.max_coefficient = 3;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const Formula f = RandomFormula(rng, shape);
      const Formula t = u.transform(f, "x");
      const Formula w = WitnessFormula(f, "x", u.qe_options());
      for (long long n = 0; n <= 20; ++n) {
        const LinearTerm numeral(Integer{n});
        const bool member = u.member(Canonicalize(Substitute(f, "y", numeral)), "x");
        const bool predicted = Decide(Substitute(t, "y", numeral));
        const bool witnessed = Decide(Substitute(w, "y", numeral));
        r.Check(member == predicted && member == witnessed,
                [&] { return Show(f) + " at y = " + std::to_string(n) + " with U_phi " + Show(t); });
      }
    });
  }
  return r;
}

SuiteResult UltrafilterSplitting(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrafilterOracle& u = ctx.model->oracle();
  const FormulaShape shape = CoordinateShape(3);
  const std::vector<Variable> xs = Coords(3);
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const Formula f = RandomFormula(rng, shape);
      const bool direct = MemberN(u, IndexedSetFormula(f, xs));
      for (std::size_t split = 0; split <= 3; ++split) {
        Formula inner = f;
        for (std::size_t p = 3; p > split; --p) inner = u.transform(inner, xs[p - 1]);
        const std::vector<Variable> head(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(split));
        const bool staged = MemberN(u, IndexedSetFormula(inner, head));
        r.Check(staged == direct, [&] { return Show(f) + " split at " + std::to_string(split); });
      }
    });
  }
  return r;
}

SuiteResult UltrafilterPadding(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrafilterOracle& u = ctx.model->oracle();
  const FormulaShape shape = CoordinateShape(2);
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const Formula f = RandomFormula(rng, shape);
      const bool base = MemberN(u, IndexedSetFormula(f, {"x1", "x2"}));
      const std::vector<std::vector<Variable>> padded = {
          {"x3", "x1", "x2"}, {"x1", "x3", "x2"}, {"x1", "x2", "x3"}};
      for (const auto& vars : padded) {
        r.Check(MemberN(u, IndexedSetFormula(f, vars)) == base, [&] {
          return Show(f) + " padded as (" + vars[0] + "," + vars[1] + "," + vars[2] + ")";
        });
      }
    });
  }
  return r;
}

SuiteResult UltrafilterBaseCase(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrafilterOracle& u = ctx.model->oracle();
  FormulaShape shape;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const Formula s = RandomSentence(rng, shape);
      r.Check(MemberN(u, IndexedSetFormula(s, {})) == Decide(s), [&] { return Show(s); });
    });
  }
  return r;
}

// ---------------------------------------------------------------------------
// ultrapower

SuiteResult UltrapowerElementarity(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  FormulaShape shape;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const Formula f = RandomFormula(rng, shape);
      const long long a = rng.uniform(0, 12), b = rng.uniform(0, 12);
      const bool star = m.Eval(f, {"a", "b"}, {Embed(a), Embed(b)});
      const std::map<Variable, LinearTerm> numerals = {{"a", LinearTerm(Integer(a))}, {"b", LinearTerm(Integer(b))}};
      const bool base = Decide(Substitute(f, numerals).with_declared_free_vars({}));
      r.Check(star == base, [&] { return Show(f) + " at a=" + std::to_string(a) + " b=" + std::to_string(b); });
    });
  }
  return r;
}

SuiteResult UltrapowerLos(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      // Definition unfolding on generator arguments.
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
      const std::vector<Variable> vs = Coords(n, "v");
      FormulaShape shape;
      shape.free_vars = vs;
      shape.max_coefficient = 3;
      const Formula f = RandomQuantifierFree(rng, vs, shape, 2).with_free_vars({vs.begin(), vs.end()});
      const std::vector<IndexLabel> pool = RandomLabels(rng, 3, -3, 6, 2);
      std::vector<IndexLabel> labels;
      for (std::size_t i = 0; i < n; ++i) labels.push_back(rng.pick(pool));
      std::set<IndexLabel> used(labels.begin(), labels.end());
      const std::vector<IndexLabel> order(used.begin(), used.end());
      const std::vector<Variable> coords = Coords(order.size(), "c");
      std::map<Variable, LinearTerm> subst;
      for (std::size_t i = 0; i < n; ++i) {
        const auto pos = std::lower_bound(order.begin(), order.end(), labels[i]) - order.begin();
        subst.emplace(vs[i], LinearTerm::Var(coords[static_cast<std::size_t>(pos)]));
      }
      const bool unfolded = MemberN(m.oracle(), IndexedSetFormula(Substitute(f, subst), coords));
      r.Check(m.Eval(f, vs, Generators(labels)) == unfolded, [&] { return "unfolding " + Show(f); });

      // The least-witness recursion against direct evaluation.
      FormulaShape qshape;
      qshape.free_vars = {"v1", "v2"};
      qshape.quantifier_blocks = 2;
      qshape.block_size = 1;
      qshape.max_coefficient = 3;
      const Formula g = RandomFormula(rng, qshape);
      const std::vector<GeneralizedTerm> args = {AnyTerm(rng, 0, 4, 2), AnyTerm(rng, 0, 4, 2)};
      r.Check(m.EvalLos(g, {"v1", "v2"}, args) == m.Eval(g, {"v1", "v2"}, args),
              [&] { return "recursion on " + Show(g) + " at " + ShowTerms(args); });
    });
  }
  return r;
}

SuiteResult UltrapowerIndiscernibility(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
      FormulaShape shape;
      shape.free_vars = Coords(n, "v");
      shape.free_vars.push_back("p");
      shape.quantifier_blocks = 1;
      shape.block_size = 1;
      shape.max_coefficient = 3;
      const Formula withp = RandomFormula(rng, shape);
      const long long p = rng.uniform(0, 10);
      const std::vector<Variable> vs = Coords(n, "v");
      const Formula f = Substitute(withp, "p", LinearTerm(Integer(p))).with_declared_free_vars({vs.begin(), vs.end()});
      const std::vector<IndexLabel> a = RandomLabels(rng, n, -5, 10, 3);
      const std::vector<IndexLabel> b = RandomLabels(rng, n, -5, 10, 3);
      r.Check(m.Eval(f, vs, Generators(a)) == m.Eval(f, vs, Generators(b)), [&] {
        return Show(f) + " at " + ShowTerms(Generators(a)) + " vs " + ShowTerms(Generators(b));
      });
    });
  }
  return r;
}

SuiteResult UltrapowerGeneration(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const GeneralizedTerm t = AnyTerm(rng, 0, 5, 3);
      std::vector<Variable> vars = Coords(t.arity(), "v");
      vars.push_back("w");
      const Formula relation = t.graph_over(Coords(t.arity(), "v"), "w");
      std::vector<GeneralizedTerm> args = Generators(t.indices());
      args.push_back(t);
      r.Check(m.Eval(relation, vars, args), [&] { return t.str() + " is not its graph at its generators"; });
    });
  }
  return r;
}

SuiteResult UltrapowerTightness(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const std::size_t arity = static_cast<std::size_t>(rng.uniform(1, 3));
      const std::vector<IndexLabel> labels = RandomLabels(rng, arity, 0, 5, 2);
      const GeneralizedTerm t = rng.chance(0.4) ? RandomStandardTerm(rng, labels, rng.uniform(0, 6))
                                                : RandomTerm(rng, labels);
      const Rational delta = labels.back().position() - labels.front().position() + 1 + rng.uniform(0, 2);
      const GeneralizedTerm shifted = Shifted(t, delta);
      if (m.Eq(t, shifted)) {
        const StandardResult s = m.IsStandard(t);
        const StandardResult s2 = m.IsStandard(shifted);
        r.Check(s.standard && s2.standard && s.value == s2.value,
                [&] { return t.str() + " equals its shifted copy but is not standard"; });
      } else {
        r.Check(!m.IsStandard(t).standard, [&] { return t.str() + " differs from a shifted copy yet is standard"; });
      }
    });
  }
  return r;
}

SuiteResult UltrapowerDisjointCoincidence(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  // Draw until `count` coincidences have been checked.
  for (std::size_t k = 0; r.total < ctx.count && k < 20 * ctx.count; ++k) {
    Instance(r, [&] {
      const std::vector<IndexLabel> s0 = RandomLabels(rng, static_cast<std::size_t>(rng.uniform(1, 2)), 0, 3);
      const std::vector<IndexLabel> s1 = RandomLabels(rng, static_cast<std::size_t>(rng.uniform(1, 2)), 4, 7);
      GeneralizedTerm f = RandomTerm(rng, s0), g = RandomTerm(rng, s1);
      if (rng.chance(0.6)) {
        const long long v = rng.uniform(0, 6);
        f = RandomStandardTerm(rng, s0, v);
        g = RandomStandardTerm(rng, s1, v);
      }
      if (!m.Eq(f, g)) return;
      const StandardResult a = m.IsStandard(f);
      const StandardResult b = m.IsStandard(g);
      r.Check(a.standard && b.standard && a.value == b.value,
              [&] { return f.str() + " = " + g.str() + " without a common standard value"; });
    });
  }
  return r;
}

SuiteResult UltrapowerEquivalence(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  std::vector<GeneralizedTerm> pool;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    switch (rng.uniform(0, 3)) {
      case 0:
        pool.push_back(RandomStandardTerm(rng, RandomLabels(rng, rng.uniform(0, 2), 0, 2), rng.uniform(0, 2)));
        break;
      case 1:
        pool.push_back(GeneralizedTerm::Generator(rng.uniform(0, 2)));
        break;
      case 2:
        pool.push_back(GeneralizedTerm::FromTerm(LinearTerm::Var("x1") + LinearTerm(Integer(rng.uniform(0, 1))),
                                                 {"x1", "x2"}, RandomLabels(rng, 2, 0, 2)));
        break;
      default:
        pool.push_back(RandomTerm(rng, RandomLabels(rng, rng.uniform(0, 2), 0, 2)));
    }
  }
  const std::size_t n = pool.size();
  std::vector<std::vector<char>> eq(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Instance(r, [&] { eq[i][j] = m.Eq(pool[i], pool[j]) ? 1 : 0; });
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    r.Check(eq[i][i] == 1, [&] { return pool[i].str() + " is not equal to itself"; });
    for (std::size_t j = i + 1; j < n; ++j) {
      r.Check(eq[i][j] == eq[j][i], [&] { return "asymmetry between " + pool[i].str() + " and " + pool[j].str(); });
      for (std::size_t l = 0; l < n; ++l) {
        if (eq[i][j] && eq[j][l]) {
          r.Check(eq[i][l] == 1, [&] { return "intransitive at " + pool[i].str() + ", " + pool[j].str() + ", " + pool[l].str(); });
        }
      }
    }
  }
  return r;
}

SuiteResult UltrapowerPadding(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const GeneralizedTerm s = AnyTerm(rng, 0, 4, 2);
      const GeneralizedTerm t = rng.chance(0.3) ? s.with_indices(s.indices()) : AnyTerm(rng, 0, 4, 2);
      const std::vector<IndexLabel> extra = RandomLabels(rng, static_cast<std::size_t>(rng.uniform(1, 3)), -2, 6, 2);
      r.Check(m.EqOver(s, t, extra) == m.Eq(s, t), [&] { return s.str() + " vs " + t.str() + " padded"; });
    });
  }
  return r;
}

SuiteResult UltrapowerSupport(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const GeneralizedTerm t = AnyTerm(rng, 0, 5, 3, 2);
      const std::set<IndexLabel> support = m.Support(t);
      const GeneralizedTerm restricted = m.RestrictToSupport(t);
      r.Check(m.Eq(t, restricted), [&] { return t.str() + " differs from its restriction " + restricted.str(); });
      r.Check(support.empty() == m.IsStandard(t).standard,
              [&] { return t.str() + " has support of size " + std::to_string(support.size()) + " against its standardness"; });
    });
  }
  return r;
}

// ---------------------------------------------------------------------------
// applications

SuiteResult ApplicationsClassify(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  for (const OrderAutomorphism& alpha : SuiteAutomorphisms()) {
    for (std::size_t k = 0; k < ctx.count; ++k) {
      Instance(r, [&] {
        const GeneralizedTerm t = AnyTerm(rng, -3, 5, 3, 2);
        const Classification c = Classify(m, alpha, t);
        r.Check(c.fixed == c.standard.standard, [&] { return alpha.str() + " on " + t.str(); });
      });
    }
  }
  return r;
}

SuiteResult ApplicationsGroupLaws(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  for (const OrderAutomorphism& alpha : SuiteAutomorphisms()) {
    for (std::size_t k = 0; k < ctx.count; ++k) {
      Instance(r, [&] {
        const GeneralizedTerm t = AnyTerm(rng, -3, 5, 3, 2);
        const OrderAutomorphism beta = RandomFixedPointFree(rng);
        auto where = [&] { return alpha.str() + ", " + beta.str() + " on " + t.str(); };
        r.Check(m.Eq(Lift(OrderAutomorphism::Identity(), t), t), where);
        r.Check(m.Eq(Lift(alpha.inverse(), Lift(alpha, t)), t), where);
        r.Check(Lift(alpha.compose(beta), t) == Lift(alpha, Lift(beta, t)), where);
        const GeneralizedTerm s = rng.chance(0.5) ? Shifted(t, 0) : AnyTerm(rng, -3, 5, 3, 2);
        r.Check(m.Eq(s, t) == m.Eq(Lift(alpha, s), Lift(alpha, t)), [&] { return where() + " and " + s.str(); });
      });
    }
  }
  return r;
}

SuiteResult ApplicationsAtomic(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  FormulaShape shape;
  shape.free_vars = {"v1", "v2"};
  shape.max_coefficient = 3;
  for (const OrderAutomorphism& alpha : SuiteAutomorphisms()) {
    for (std::size_t k = 0; k < ctx.count; ++k) {
      Instance(r, [&] {
        const Formula f = RandomAtom(rng, {"v1", "v2"}, shape).with_free_vars({"v1", "v2"});
        const std::vector<GeneralizedTerm> args = {AnyTerm(rng, -3, 5, 2, 2), AnyTerm(rng, -3, 5, 2, 2)};
        const std::vector<GeneralizedTerm> moved = {Lift(alpha, args[0]), Lift(alpha, args[1])};
        r.Check(m.Eval(f, {"v1", "v2"}, args) == m.Eval(f, {"v1", "v2"}, moved),
                [&] { return alpha.str() + " changes " + Show(f) + " at " + ShowTerms(args); });
      });
    }
  }
  return r;
}

SuiteResult ApplicationsIterates(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  const OrderAutomorphism step = OrderAutomorphism::Translation(1);
  for (long long n = 1; n <= 3; ++n) {
    const OrderAutomorphism alpha = step.power(n);
    for (std::size_t k = 0; k < ctx.count; ++k) {
      Instance(r, [&] {
        const GeneralizedTerm t = AnyTerm(rng, 0, 5, 3);
        const Classification c = Classify(m, alpha, t);
        r.Check(c.fixed == c.standard.standard, [&] { return alpha.str() + " on " + t.str(); });
      });
    }
  }
  return r;
}

SuiteResult ApplicationsSeparation(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const OrderAutomorphism alpha = RandomFixedPointFree(rng);
      const std::vector<IndexLabel> drawn = RandomLabels(rng, static_cast<std::size_t>(rng.uniform(1, 4)), -5, 5, 2);
      const std::set<IndexLabel> labels(drawn.begin(), drawn.end());
      const unsigned power = SeparatingPower(alpha, labels);
      std::vector<IndexLabel> images = drawn;
      for (unsigned j = 1; j <= power; ++j) {
        for (IndexLabel& i : images) i = alpha(i);
        const bool disjoint =
            std::none_of(images.begin(), images.end(), [&](const IndexLabel& i) { return labels.count(i) > 0; });
        r.Check(disjoint == (j == power), [&] {
          return alpha.str() + " separates at " + std::to_string(power) + " but power " + std::to_string(j) +
                 (disjoint ? " is already disjoint" : " is not disjoint");
        });
      }
    });
  }
  return r;
}

SuiteResult FromReport(const DemoReport& report) {
  SuiteResult r;
  r.total = report.checks;
  r.passed = report.checks - report.violations;
  for (std::size_t i = 0; i < report.failures.size() && i < kMaxReported; ++i) r.failures.push_back(report.failures[i]);
  return r;
}

SuiteResult ApplicationsChain(const SuiteContext& ctx) {
  return FromReport(RunChainDemo(*ctx.model, 4, static_cast<int>(ctx.count), ctx.seed));
}

SuiteResult ApplicationsLattice(const SuiteContext& ctx) {
  return FromReport(RunLatticeDemo(*ctx.model, {0, 1}, {2, 3}, static_cast<int>(ctx.count), ctx.seed));
}

SuiteResult ApplicationsSubmodels(const SuiteContext& ctx) {
  SuiteResult r;
  Rng rng(ctx.seed);
  const UltrapowerModel& m = *ctx.model;
  for (std::size_t k = 0; k < ctx.count; ++k) {
    Instance(r, [&] {
      const GeneralizedTerm t = AnyTerm(rng, 0, 5, 3);
      const std::vector<IndexLabel> small = RandomLabels(rng, static_cast<std::size_t>(rng.uniform(1, 3)), 0, 5);
      std::set<IndexLabel> s0(small.begin(), small.end());
      std::set<IndexLabel> s1 = s0;
      for (const IndexLabel& i : RandomLabels(rng, 2, 0, 5)) s1.insert(i);
      const bool in0 = InSubmodel(m, t, GeneratedSubmodel::Finite(s0));
      const bool in1 = InSubmodel(m, t, GeneratedSubmodel::Finite(s1));
      r.Check(!in0 || in1, [&] { return t.str() + " leaves a larger submodel"; });
      r.Check(InSubmodel(m, Embed(rng.uniform(0, 9)), GeneratedSubmodel::Finite(s0)),
              [] { return "a standard element is missing from a submodel"; });
    });
  }
  return r;
}

}  // namespace

void SuiteResult::Check(bool condition, const std::function<std::string()>& describe) {
  ++total;
  if (condition) {
    ++passed;
  } else if (failures.size() < kMaxReported) {
    failures.push_back(describe());
  }
}

std::uint64_t SuiteSeed(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return seed ^ h;
}

const std::vector<SuiteSpec>& AllSuites() {
  static const std::vector<SuiteSpec> suites = {
      {"kernel.roundtrip", "parse(render(f)) is f", 100, 500, KernelRoundTrip},
      {"kernel.connectives", "evaluation respects connectives", 40, 200, KernelConnectives},
      {"kernel.substitution", "substitution lemma", 50, 200, KernelSubstitution},
      {"qe.differential", "eliminate agrees with exact bounded evaluation", 30, 300, QeDifferential},
      {"qe.idempotent", "eliminate is idempotent on its output", 40, 200, QeIdempotent},
      {"qe.excluded-middle", "decide(s & !s) and decide(s | !s)", 30, 100, QeExcludedMiddle},
      {"qe.normal-form", "x-normal form is equivalent and isolated", 20, 100, QeNormalForm},
      {"ultrafilter.axioms", "meets, complements and upward closure at n = 1, 2, 3", 20, 200, UltrafilterAxioms},
      {"ultrafilter.nonprincipal", "points are never large", 20, 100, UltrafilterNonprincipal},
      {"ultrafilter.amenability", "membership equals decide(U_phi) for 21 parameters", 10, 100, UltrafilterAmenability},
      {"ultrafilter.splitting", "staged folding agrees at every split point", 20, 100, UltrafilterSplitting},
      {"ultrafilter.padding", "unused coordinates do not change membership", 20, 100, UltrafilterPadding},
      {"ultrafilter.base-case", "zero-dimensional membership is decide", 20, 50, UltrafilterBaseCase},
      {"ultrapower.elementarity", "eval of embedded numerals is decide", 20, 100, UltrapowerElementarity},
      {"ultrapower.los", "eval agrees with definition unfolding and the witness recursion", 10, 100, UltrapowerLos},
      {"ultrapower.indiscernibility", "generator tuples in the same order agree", 20, 100, UltrapowerIndiscernibility},
      {"ultrapower.generation", "terms satisfy their graph at their generators", 20, 50, UltrapowerGeneration},
      {"ultrapower.tightness", "equal to a shifted copy iff standard", 20, 50, UltrapowerTightness},
      {"ultrapower.disjoint", "coincidences over disjoint labels are standard", 20, 50, UltrapowerDisjointCoincidence},
      {"ultrapower.equivalence", "eq is an equivalence relation", 12, 50, UltrapowerEquivalence},
      {"ultrapower.padding", "eq is invariant under index padding", 20, 50, UltrapowerPadding},
      {"ultrapower.support", "restriction to the support and empty support iff standard", 15, 50, UltrapowerSupport},
      {"applications.classify", "fixed iff standard for three automorphisms", 10, 50, ApplicationsClassify},
      {"applications.group-laws", "lift is a group action compatible with eq", 10, 50, ApplicationsGroupLaws},
      {"applications.atomic", "lifted automorphisms preserve atomic truth", 10, 50, ApplicationsAtomic},
      {"applications.iterates", "finite iterates of a translation", 5, 20, ApplicationsIterates},
      {"applications.separation", "separating power is minimal", 30, 100, ApplicationsSeparation},
      {"applications.chain", "descending chain with standard intersection", 10, 25, ApplicationsChain},
      {"applications.lattice", "disjoint generated submodels meet in the standard part", 10, 25, ApplicationsLattice},
      {"applications.submodels", "membership is monotone in the generating set", 15, 50, ApplicationsSubmodels},
  };
  return suites;
}

const SuiteSpec& FindSuite(const std::string& name) {
  for (const SuiteSpec& s : AllSuites()) {
    if (s.name == name) return s;
  }
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace upw
