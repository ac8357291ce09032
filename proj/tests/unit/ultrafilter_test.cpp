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


#include <gtest/gtest.h>

#include "generic_point.hpp"
#include "helpers.hpp"
#include "upw/error.hpp"
#include "upw/evaluate.hpp"
#include "upw/qe.hpp"
#include "upw/random.hpp"
#include "upw/ultrafilter.hpp"

namespace upw {
namespace {

using testing::P;
using testing::SameSet;

const UltrafilterOracle& U() {
  static const UltrafilterOracle u = BuiltinInfinityUltrafilter();
  return u;
}

std::vector<Variable> Coordinates(std::size_t n) {
  std::vector<Variable> vars;
  for (std::size_t i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
  return vars;
}

TEST(Builtin, TailsAreLarge) {
  EXPECT_TRUE(U().member(P("5 < x"), "x"));
  EXPECT_TRUE(Decide(WitnessFormula(P("5 < x"), "x")));
}

TEST(Builtin, EvenNumbersAreLargeOddAreNot) {
  EXPECT_TRUE(U().member(P("Div_2(x)"), "x"));
  EXPECT_FALSE(U().member(P("Div_2(x + 1)"), "x"));
}

TEST(Builtin, SingletonsAreSmall) {
  const Formula t = U().transform(P("x = y"), "x");
  EXPECT_EQ(t.free_vars(), (std::set<Variable>{"y"}));
  EXPECT_TRUE(SameSet(t, Formula::False()));
}

TEST(Transform, BoundedSetsAreSmall) { EXPECT_TRUE(SameSet(U().transform(P("x < y"), "x"), Formula::False())); }

TEST(Transform, ResidueCarriesToParameter) {
  EXPECT_TRUE(SameSet(U().transform(P("Div_3(x + y)"), "x"), P("Div_3(y)")));
}

TEST(Transform, RequiresFreeVariable) {
  EXPECT_THROW(U().transform(P("y < 3"), "x"), DomainError);
  EXPECT_THROW(U().member(P("x < y"), "x"), DomainError);
}

TEST(Transform, AgreesWithWitnessFormula) {
  Rng rng(31);
  FormulaShape shape;
  shape.free_vars = {"x", "y"};
  for (int i = 0; i < 120; ++i) {
    const Formula phi = RandomFormula(rng, shape);
    if (!phi.free_vars().count("x")) continue;
    const Formula t = InfinityTransform(phi, "x");
    EXPECT_TRUE(t.is_quantifier_free());
    EXPECT_FALSE(t.mentions("x"));
    const Formula w = WitnessFormula(phi, "x");
    if (const auto same = testing::SameSetWithin(t, w, 20000)) {
      EXPECT_TRUE(*same) << Render(phi);
      continue;
    }
    for (int y = 0; y <= 20; ++y) {
      const Integer n = y;
      EXPECT_EQ(Evaluate(t, {{"y", n}}), Decide(Substitute(w, "y", LinearTerm(n)))) << Render(phi);
    }
  }
}

TEST(Transform, AgreesWithGenericPoint) {
  Rng rng(32);
  FormulaShape shape;
  shape.free_vars = {"x", "y"};
  for (int i = 0; i < 120; ++i) {
    const Formula phi = RandomFormula(rng, shape);
    if (!phi.free_vars().count("x")) continue;
    const Formula t = U().transform(phi, "x");
    for (int y = 0; y <= 20; y += 5) {
      EXPECT_EQ(oracle::Holds(t, {{"y", y}}), oracle::GenericMember(phi, {"x"}, {{"y", y}})) << Render(phi);
    }
  }
}

TEST(MemberN, Examples) {
  EXPECT_TRUE(MemberN(U(), IndexedSetFormula(P("x1 < x2"), {"x1", "x2"})));
  EXPECT_FALSE(MemberN(U(), IndexedSetFormula(P("x2 < x1"), {"x1", "x2"})));
  EXPECT_TRUE(MemberN(U(), IndexedSetFormula(P("Div_2(x1) & Div_2(x2)"), {"x1", "x2"})));
}

TEST(MemberN, EmptyTupleIsTruth) {
  EXPECT_TRUE(MemberN(U(), IndexedSetFormula(P("1 < 2"), {})));
  EXPECT_FALSE(MemberN(U(), IndexedSetFormula(P("2 < 1"), {})));
}

TEST(MemberN, Errors) {
  EXPECT_THROW(IndexedSetFormula(P("x1 < x2"), {"x1", "x1"}), DomainError);
  EXPECT_THROW(MemberN(U(), IndexedSetFormula(P("x1 < y"), {"x1"})), DomainError);
}

TEST(MemberN, AgreesWithGenericPoint) {
  Rng rng(33);
  for (std::size_t n = 1; n <= 3; ++n) {
    FormulaShape shape;
    shape.free_vars = Coordinates(n);
    for (int i = 0; i < 60; ++i) {
      const Formula phi = RandomFormula(rng, shape);
      EXPECT_EQ(MemberN(U(), IndexedSetFormula(phi, Coordinates(n))), oracle::GenericMember(phi, Coordinates(n)))
          << Render(phi);
    }
  }
}

TEST(MemberN, UltrafilterLaws) {
  Rng rng(34);
  for (std::size_t n = 1; n <= 3; ++n) {
    FormulaShape shape;
    shape.free_vars = Coordinates(n);
    auto in = [&](const Formula& f) { return MemberN(U(), IndexedSetFormula(f, Coordinates(n))); };
    for (int i = 0; i < 40; ++i) {
      const Formula a = RandomFormula(rng, shape);
      const Formula b = RandomFormula(rng, shape);
      EXPECT_EQ(in(Formula::And(a, b)), in(a) && in(b));
      EXPECT_EQ(in(Formula::Not(a)), !in(a));
      if (in(a)) EXPECT_TRUE(in(Formula::Or(a, b)));
    }
  }
}

TEST(Section, Examples) {
  const IndexedSetFormula x(P("x1 < x2"), {"x1", "x2"});
  const IndexedSetFormula s = Section(x, {{"x1", Integer(5)}});
  EXPECT_EQ(s.formula(), P("5 < x2"));
  EXPECT_EQ(s.vars(), (std::vector<Variable>{"x2"}));
  const IndexedSetFormula same = Section(x, std::map<Variable, Integer>{});
  EXPECT_EQ(same.formula(), x.formula());
  EXPECT_EQ(same.vars(), x.vars());
  const IndexedSetFormula d = Section(IndexedSetFormula(P("Div_2(x1 + x2)"), {"x1", "x2"}), {{"x1", Integer(1)}});
  EXPECT_EQ(d.formula(), P("Div_2(1 + x2)"));
}

TEST(Section, RequiresPrefix) {
  const IndexedSetFormula x(P("x1 < x2"), {"x1", "x2"});
  EXPECT_THROW(Section(x, {{"x2", Integer(5)}}), DomainError);
  EXPECT_THROW(Section(x, {{"y", Integer(5)}}), DomainError);
  EXPECT_THROW(Section(x, std::vector<Integer>{1, 2, 3}), DomainError);
}

TEST(Section, TwoStageMembership) {
  Rng rng(35);
  FormulaShape shape;
  shape.free_vars = Coordinates(3);
  for (int i = 0; i < 40; ++i) {
    const IndexedSetFormula x(RandomFormula(rng, shape), Coordinates(3));
    const Formula inner = U().transform(x.formula(), "x3");
    EXPECT_EQ(MemberN(U(), x), MemberN(U(), IndexedSetFormula(inner, Coordinates(2))));
    const Formula folded = FoldTransforms(U(), x);
    EXPECT_TRUE(folded.is_quantifier_free());
  }
}

}  // namespace
}  // namespace upw
