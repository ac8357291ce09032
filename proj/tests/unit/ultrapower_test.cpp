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
#include "upw/literal.hpp"
#include "upw/qe.hpp"
#include "upw/random.hpp"
#include "upw/ultrapower.hpp"

namespace upw {
namespace {

using testing::P;

const UltrapowerModel& M() {
  static const UltrapowerModel m(BuiltinInfinityUltrafilter());
  return m;
}

GeneralizedTerm T(const std::string& literal) { return ParseTermLiteral(literal); }
GeneralizedTerm Id(long long q) { return GeneralizedTerm::Generator(q); }

TEST(IndexLabel, DenseOrder) {
  const IndexLabel a = IndexLabel::Parse("1/3");
  const IndexLabel b = IndexLabel::Parse("0.5");
  EXPECT_LT(a, b);
  const IndexLabel c = IndexLabel::Between(a, b);
  EXPECT_LT(a, c);
  EXPECT_LT(c, b);
  EXPECT_LT(b, IndexLabel::Above(b));
  EXPECT_EQ(IndexLabel::Parse("2/4"), b);
  EXPECT_THROW(IndexLabel::Parse("1/0"), ParseError);
}

TEST(MkTerm, IdentityGraphIsTheGenerator) {
  const GeneralizedTerm t = GeneralizedTerm::Make(P("z = x1"), {"x1"}, "z", {0});
  EXPECT_TRUE(M().Eq(t, Id(0)));
  EXPECT_EQ(t.arity(), 1u);
}

TEST(MkTerm, ConstantHasNoIndices) {
  const GeneralizedTerm t = GeneralizedTerm::Make(P("z = 7"), {}, "z", {});
  EXPECT_EQ(t.arity(), 0u);
  EXPECT_TRUE(M().Eq(t, Embed(7)));
}

TEST(MkTerm, Rejections) {
  try {
    GeneralizedTerm::Make(P("z < x1"), {"x1"}, "z", {0});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("not functional"), std::string::npos);
  }
  try {
    GeneralizedTerm::Make(P("x1 < 3 & z = 0"), {"x1"}, "z", {0});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("not total"), std::string::npos);
  }
  EXPECT_THROW(GeneralizedTerm::Make(P("z = x1 + x2"), {"x1", "x2"}, "z", {1, 0}), DomainError);
  EXPECT_THROW(GeneralizedTerm::Make(P("z = x1"), {"x1"}, "z", {0, 1}), DomainError);
}

TEST(MkTerm, LiteralSyntax) {
  EXPECT_EQ(T("[id@3]"), Id(3));
  EXPECT_EQ(T("[const@4]"), Embed(4));
  EXPECT_TRUE(M().Eq(T("[term \"x1 + x2\" @ 0,1]"),
                     T("[graph \"z = x1 + x2\" vars (x1,x2) out z @ 0,1]")));
  EXPECT_EQ(ParseTermLiteral(Id(2).str()), Id(2));
  EXPECT_THROW(T("[id 3]"), ParseError);
  EXPECT_THROW(T("[graph \"z < x1\" vars (x1) out z @ 0]"), DomainError);
}

TEST(Eq, Examples) {
  EXPECT_FALSE(M().Eq(Id(0), Id(1)));
  EXPECT_TRUE(M().Eq(Embed(7), GeneralizedTerm::FromTerm(LinearTerm(7), {"x1"}, {3})));
  EXPECT_TRUE(M().Eq(T("[term \"x1\" @ 0,1]"), Id(0)));
}

TEST(Eq, EquivalenceRelationOnSample) {
  Rng rng(41);
  std::vector<GeneralizedTerm> terms;
  for (int i = 0; i < 12; ++i) {
    const auto labels = RandomLabels(rng, static_cast<std::size_t>(rng.uniform(0, 2)), 0, 3);
    terms.push_back(rng.chance(0.3) ? RandomStandardTerm(rng, labels, rng.uniform(0, 3)) : RandomTerm(rng, labels));
  }
  for (const auto& s : terms) EXPECT_TRUE(M().Eq(s, s));
  for (const auto& s : terms) {
    for (const auto& t : terms) {
      const bool st = M().Eq(s, t);
      EXPECT_EQ(st, M().Eq(t, s));
      if (!st) continue;
      for (const auto& u : terms) {
        if (M().Eq(t, u)) EXPECT_TRUE(M().Eq(s, u));
      }
    }
  }
}

TEST(Eq, PaddingInvariance) {
  Rng rng(42);
  for (int i = 0; i < 25; ++i) {
    const GeneralizedTerm s = RandomTerm(rng, RandomLabels(rng, 1, 0, 4));
    const GeneralizedTerm t = RandomTerm(rng, RandomLabels(rng, 1, 0, 4));
    const std::vector<IndexLabel> extra = RandomLabels(rng, 2, -2, 6, 2);
    EXPECT_EQ(M().Eq(s, t), M().EqOver(s, t, extra)) << s.str() << " " << t.str();
  }
}

TEST(Eval, Examples) {
  EXPECT_TRUE(M().Eval(P("Div_2(v)"), {"v"}, {Id(0)}));
  EXPECT_TRUE(M().Eval(P("v1 < v2"), {"v1", "v2"}, {Id(0), Id(1)}));
  EXPECT_FALSE(M().Eval(P("v2 < v1"), {"v1", "v2"}, {Id(0), Id(1)}));
  EXPECT_TRUE(M().Eval(P("v = v"), {"v"}, {T("[term \"x1 + 3\" @ 5]")}));
  EXPECT_TRUE(M().Eval(P("3 < v"), {"v"}, {Id(0)}));
}

TEST(Eval, Errors) {
  EXPECT_THROW(M().Eval(P("v1 < v2"), {"v1", "v2"}, {Id(0)}), DomainError);
  EXPECT_THROW(M().Eval(P("v1 < y"), {"v1"}, {Id(0)}), DomainError);
}

TEST(Eval, GeneratorsMatchGenericPoint) {
  Rng rng(43);
  FormulaShape shape;
  shape.free_vars = {"v1", "v2", "v3"};
  for (int i = 0; i < 40; ++i) {
    const Formula phi = RandomFormula(rng, shape);
    const std::vector<IndexLabel> labels = RandomLabels(rng, 3, -5, 5, 3);
    const bool expected = oracle::GenericMember(phi, {"v1", "v2", "v3"});
    EXPECT_EQ(M().Eval(phi, {"v1", "v2", "v3"}, {GeneralizedTerm::Generator(labels[0]),
                                                 GeneralizedTerm::Generator(labels[1]),
                                                 GeneralizedTerm::Generator(labels[2])}),
              expected)
        << Render(phi);
  }
}

TEST(Eval, UnfoldedTermsMatchGenericPoint) {
  Rng rng(44);
  FormulaShape shape;
  shape.free_vars = {"v1", "v2"};
  shape.quantifier_blocks = 1;
  for (int i = 0; i < 25; ++i) {
    const Formula phi = RandomFormula(rng, shape);
    const GeneralizedTerm s = RandomTerm(rng, {0});
    const GeneralizedTerm t = RandomTerm(rng, {0, 1});
    const Formula unfolded = Formula::Exists(
        std::vector<Variable>{"v1", "v2"},
        Formula::And({s.graph_over({"x1"}, "v1"), t.graph_over({"x1", "x2"}, "v2"), phi}));
    EXPECT_EQ(M().Eval(phi, {"v1", "v2"}, {s, t}), oracle::GenericMember(unfolded, {"x1", "x2"}))
        << Render(phi) << " " << s.str() << " " << t.str();
  }
}

TEST(Eval, LosRecursionAgrees) {
  Rng rng(45);
  FormulaShape shape;
  shape.free_vars = {"v1", "v2"};
  shape.quantifier_blocks = 2;
  shape.block_size = 1;
  for (int i = 0; i < 20; ++i) {
    const Formula phi = RandomFormula(rng, shape);
    const std::vector<GeneralizedTerm> args{RandomTerm(rng, {0}), GeneralizedTerm::Generator(1)};
    EXPECT_EQ(M().Eval(phi, {"v1", "v2"}, args), M().EvalLos(phi, {"v1", "v2"}, args)) << Render(phi);
  }
}

TEST(Embed, Examples) {
  EXPECT_TRUE(M().Eval(P("!exists w. w < v"), {"v"}, {Embed(0)}));
  EXPECT_TRUE(M().Eval(P("v1 < v2"), {"v1", "v2"}, {Embed(3), Embed(5)}));
  EXPECT_TRUE(M().Eq(Embed(4), Embed(4)));
  EXPECT_FALSE(M().Eq(Embed(4), Embed(5)));
}

TEST(Embed, Elementarity) {
  Rng rng(46);
  FormulaShape shape;
  for (int i = 0; i < 60; ++i) {
    const Formula phi = RandomFormula(rng, shape);
    const long long a = rng.uniform(0, 12);
    const long long b = rng.uniform(0, 12);
    const Formula sentence = Substitute(phi, {{"a", LinearTerm(a)}, {"b", LinearTerm(b)}});
    EXPECT_EQ(M().Eval(phi, {"a", "b"}, {Embed(a), Embed(b)}), oracle::HoldsSentence(sentence)) << Render(sentence);
  }
}

TEST(IsStandard, Examples) {
  const StandardResult c = M().IsStandard(Embed(7));
  EXPECT_TRUE(c.standard);
  EXPECT_EQ(c.value, Integer(7));
  EXPECT_FALSE(M().IsStandard(Id(0)).standard);
  EXPECT_FALSE(M().IsStandard(Id(0)).value.has_value());
  const StandardResult m = M().IsStandard(T("[graph \"(x1 < 5 & z = x1) | (!x1 < 5 & z = 5)\" vars (x1) out z @ 0]"));
  EXPECT_TRUE(m.standard);
  EXPECT_EQ(m.value, Integer(5));
}

TEST(IsStandard, ValueIsEqualToEmbedding) {
  Rng rng(47);
  for (int i = 0; i < 20; ++i) {
    const long long value = rng.uniform(0, 9);
    const GeneralizedTerm t = RandomStandardTerm(rng, RandomLabels(rng, 2, 0, 5), value);
    const StandardResult r = M().IsStandard(t);
    ASSERT_TRUE(r.standard) << t.str();
    EXPECT_EQ(r.value, Integer(value));
    EXPECT_TRUE(M().Eq(t, Embed(value)));
  }
}

TEST(IsStandard, ShiftedCopiesAgreeOnlyWhenStandard) {
  Rng rng(48);
  for (int i = 0; i < 25; ++i) {
    const GeneralizedTerm t = RandomTerm(rng, RandomLabels(rng, 2, 0, 3));
    const GeneralizedTerm far = Shifted(t, 10);
    if (M().Eq(t, far)) EXPECT_TRUE(M().IsStandard(t).standard) << t.str();
  }
}

TEST(Support, Examples) {
  EXPECT_EQ(M().Support(T("[term \"x1\" @ 0,1]")), (std::set<IndexLabel>{0}));
  EXPECT_TRUE(M().Support(Embed(3)).empty());
  EXPECT_EQ(M().Support(T("[term \"x1 + x2\" @ 0,1]")), (std::set<IndexLabel>{0, 1}));
}

TEST(Support, RestrictionAndStandardness) {
  Rng rng(49);
  for (int i = 0; i < 20; ++i) {
    const GeneralizedTerm t = RandomTerm(rng, RandomLabels(rng, 2, 0, 3));
    const std::set<IndexLabel> support = M().Support(t);
    const GeneralizedTerm r = M().RestrictToSupport(t);
    EXPECT_EQ(std::set<IndexLabel>(r.indices().begin(), r.indices().end()), support);
    EXPECT_TRUE(M().Eq(t, r)) << t.str();
    EXPECT_EQ(support.empty(), M().IsStandard(t).standard) << t.str();
  }
}

TEST(Indiscernibility, IncreasingTuplesAgree) {
  Rng rng(50);
  FormulaShape shape;
  shape.free_vars = {"v1", "v2"};
  for (int i = 0; i < 25; ++i) {
    const Formula phi = RandomFormula(rng, shape);
    const auto l = RandomLabels(rng, 2, -4, 4, 2);
    const auto r = RandomLabels(rng, 2, -4, 4, 2);
    EXPECT_EQ(M().Eval(phi, {"v1", "v2"}, {GeneralizedTerm::Generator(l[0]), GeneralizedTerm::Generator(l[1])}),
              M().Eval(phi, {"v1", "v2"}, {GeneralizedTerm::Generator(r[0]), GeneralizedTerm::Generator(r[1])}))
        << Render(phi);
  }
}

}  // namespace
}  // namespace upw
