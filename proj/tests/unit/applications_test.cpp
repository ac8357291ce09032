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

#include "helpers.hpp"
#include "upw/applications.hpp"
#include "upw/error.hpp"
#include "upw/literal.hpp"
#include "upw/random.hpp"

namespace upw {
namespace {

using testing::P;

const UltrapowerModel& M() {
  static const UltrapowerModel m(BuiltinInfinityUltrafilter());
  return m;
}

GeneralizedTerm T(const std::string& literal) { return ParseTermLiteral(literal); }
GeneralizedTerm Id(long long q) { return GeneralizedTerm::Generator(q); }
const OrderAutomorphism kPlusOne = OrderAutomorphism::Translation(1);
const GeneralizedTerm kMin5 = ParseTermLiteral("[graph \"(x1 < 5 & z = x1) | (!x1 < 5 & z = 5)\" vars (x1) out z @ 0]");

TEST(Lift, Examples) {
  EXPECT_EQ(Lift(kPlusOne, Id(0)), Id(1));
  Rng rng(70);
  EXPECT_TRUE(M().Eq(Lift(RandomFixedPointFree(rng), Embed(7)), Embed(7)));
  EXPECT_EQ(Lift(kPlusOne, Lift(kPlusOne, Id(0))), Id(2));
}

TEST(Lift, GroupAction) {
  Rng rng(71);
  for (int i = 0; i < 20; ++i) {
    const OrderAutomorphism a = RandomFixedPointFree(rng);
    const OrderAutomorphism b = RandomFixedPointFree(rng);
    const GeneralizedTerm t = RandomTerm(rng, RandomLabels(rng, 2, -3, 3));
    EXPECT_EQ(Lift(OrderAutomorphism::Identity(), t), t);
    EXPECT_TRUE(M().Eq(Lift(a.inverse(), Lift(a, t)), t));
    EXPECT_EQ(Lift(a.compose(b), t), Lift(a, Lift(b, t)));
  }
}

TEST(Lift, RespectsEqualityAndAtomicTruth) {
  Rng rng(72);
  FormulaShape shape;
  shape.free_vars = {"v1", "v2"};
  for (int i = 0; i < 20; ++i) {
    const OrderAutomorphism a = RandomFixedPointFree(rng);
    const GeneralizedTerm s = RandomTerm(rng, RandomLabels(rng, 1, 0, 2));
    const GeneralizedTerm t = RandomTerm(rng, RandomLabels(rng, 2, 0, 2));
    EXPECT_EQ(M().Eq(s, t), M().Eq(Lift(a, s), Lift(a, t)));
    const Formula atom = RandomAtom(rng, {"v1", "v2"}, shape);
    EXPECT_EQ(M().Eval(atom, {"v1", "v2"}, {s, t}), M().Eval(atom, {"v1", "v2"}, {Lift(a, s), Lift(a, t)}))
        << Render(atom);
  }
}

TEST(SeparatingPower, Examples) {
  EXPECT_EQ(SeparatingPower(kPlusOne, {0, 1, 2}), 3u);
  EXPECT_EQ(SeparatingPower(kPlusOne, {0, 5}), 1u);
  EXPECT_THROW(SeparatingPower(OrderAutomorphism::Identity(), {0}), DomainError);
  EXPECT_THROW(SeparatingPower(kPlusOne, {}), DomainError);
}

TEST(SeparatingPower, IsLeast) {
  Rng rng(73);
  for (int i = 0; i < 50; ++i) {
    const OrderAutomorphism a = RandomFixedPointFree(rng);
    const auto labels = RandomLabels(rng, static_cast<std::size_t>(rng.uniform(1, 4)), -4, 4, 2);
    const std::set<IndexLabel> set(labels.begin(), labels.end());
    const unsigned m = SeparatingPower(a, set);
    auto disjoint = [&](unsigned k) {
      const OrderAutomorphism ak = a.power(k);
      for (const IndexLabel& i : set) {
        if (set.count(ak(i))) return false;
      }
      return true;
    };
    EXPECT_TRUE(disjoint(m)) << a.str();
    for (unsigned k = 1; k < m; ++k) EXPECT_FALSE(disjoint(k)) << a.str();
  }
}

TEST(Classify, Examples) {
  EXPECT_FALSE(Classify(M(), kPlusOne, Id(0)).fixed);
  const Classification c = Classify(M(), kPlusOne, Embed(9));
  EXPECT_TRUE(c.fixed);
  EXPECT_EQ(c.standard.value, Integer(9));
  const Classification m = Classify(M(), kPlusOne, kMin5);
  EXPECT_TRUE(m.fixed);
  EXPECT_EQ(m.standard.value, Integer(5));
  EXPECT_THROW(Classify(M(), OrderAutomorphism::Identity(), Id(0)), DomainError);
}

TEST(Classify, IteratesFixExactlyTheStandardElements) {
  Rng rng(74);
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 8; ++i) {
      const auto labels = RandomLabels(rng, 2, 0, 4);
      const GeneralizedTerm t = rng.chance(0.4) ? RandomStandardTerm(rng, labels, rng.uniform(0, 9)) : RandomTerm(rng, labels);
      const Classification c = Classify(M(), kPlusOne.power(n), t);
      EXPECT_EQ(c.fixed, c.standard.standard) << t.str();
    }
  }
}

TEST(InSubmodel, Examples) {
  EXPECT_FALSE(InSubmodel(M(), Id(4), GeneratedSubmodel::AtLeast(5)));
  EXPECT_TRUE(InSubmodel(M(), Id(5), GeneratedSubmodel::AtLeast(5)));
  EXPECT_TRUE(InSubmodel(M(), Embed(3), GeneratedSubmodel::Finite({})));
  EXPECT_FALSE(InSubmodel(M(), T("[term \"x1 + x2\" @ 0,1]"), GeneratedSubmodel::Finite({0})));
  EXPECT_TRUE(InSubmodel(M(), T("[term \"x1\" @ 0,1]"), GeneratedSubmodel::Finite({0})));
}

TEST(InSubmodel, Monotone) {
  Rng rng(75);
  for (int i = 0; i < 15; ++i) {
    const GeneralizedTerm t = RandomTerm(rng, RandomLabels(rng, 2, 0, 3));
    if (InSubmodel(M(), t, GeneratedSubmodel::Finite({0, 1}))) {
      EXPECT_TRUE(InSubmodel(M(), t, GeneratedSubmodel::Finite({0, 1, 2, 3}))) << t.str();
    }
    if (InSubmodel(M(), t, GeneratedSubmodel::AtLeast(2))) {
      EXPECT_TRUE(InSubmodel(M(), t, GeneratedSubmodel::AtLeast(1))) << t.str();
    }
  }
}

TEST(ChainDemo, Examples) {
  const DemoReport r = RunChainDemo(M(), 3, 20, 42);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.witnesses.size(), 3u);
  const DemoReport p = RunChainDemo(M(), 2, 0, 42);
  EXPECT_TRUE(p.passed());
  EXPECT_EQ(p.witnesses.size(), 2u);
  EXPECT_THROW(RunChainDemo(M(), 1, 5, 42), DomainError);
}

TEST(ChainDemo, Deterministic) {
  const DemoReport a = RunChainDemo(M(), 2, 5, 9);
  const DemoReport b = RunChainDemo(M(), 2, 5, 9);
  EXPECT_EQ(a.witnesses, b.witnesses);
  EXPECT_EQ(a.checks, b.checks);
}

TEST(LatticeDemo, Examples) {
  const DemoReport r = RunLatticeDemo(M(), {0, 1}, {2, 3}, 20, 42);
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.checks, 0u);
  EXPECT_THROW(RunLatticeDemo(M(), {0}, {0}, 5, 42), DomainError);
  const DemoReport v = RunLatticeDemo(M(), {0}, {1}, 0, 42);
  EXPECT_TRUE(v.passed());
  EXPECT_EQ(v.violations, 0u);
}

}  // namespace
}  // namespace upw
