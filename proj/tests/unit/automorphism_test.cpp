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

#include "upw/automorphism.hpp"
#include "upw/error.hpp"
#include "upw/random.hpp"

namespace upw {
namespace {

Rational Q(long long n, long long d = 1) { return Rational(n) / d; }

TEST(OrderAutomorphism, Translation) {
  const OrderAutomorphism a = OrderAutomorphism::Translation(1);
  EXPECT_EQ(a(Q(3)), Q(4));
  EXPECT_EQ(a.inverse()(Q(3)), Q(2));
  EXPECT_EQ(a.power(3)(Q(0)), Q(3));
  EXPECT_EQ(a.power(-2)(Q(0)), Q(-2));
  EXPECT_FALSE(a.fixed_point().has_value());
}

TEST(OrderAutomorphism, PiecewiseLinear) {
  // x -> 2x below 0, x -> x/2 above
  const OrderAutomorphism a({Q(0)}, {LinearPiece{2, 0}, LinearPiece{Q(1, 2), 0}});
  EXPECT_EQ(a(Q(-3)), Q(-6));
  EXPECT_EQ(a(Q(3)), Q(3, 2));
  EXPECT_EQ(a.fixed_point(), Q(0));
  EXPECT_EQ(a.compose(a.inverse()), OrderAutomorphism::Identity());
  EXPECT_EQ(OrderAutomorphism::Parse(a.str()), a);
}

TEST(OrderAutomorphism, Parse) {
  EXPECT_EQ(OrderAutomorphism::Parse("id"), OrderAutomorphism::Identity());
  EXPECT_EQ(OrderAutomorphism::Parse("translate:1/2"), OrderAutomorphism::Translation(Q(1, 2)));
  EXPECT_EQ(OrderAutomorphism::Parse("affine:2,1"), OrderAutomorphism::Affine(2, 1));
  EXPECT_EQ(OrderAutomorphism::Parse("pl:0;1,1;1,1"), OrderAutomorphism::Translation(1));
  EXPECT_THROW(OrderAutomorphism::Parse("rotate:1"), ParseError);
  EXPECT_THROW(OrderAutomorphism::Parse("affine:0,1"), DomainError);
}

TEST(OrderAutomorphism, RejectsNonBijections) {
  EXPECT_THROW(OrderAutomorphism({Q(0)}, {LinearPiece{1, 0}, LinearPiece{1, 1}}), DomainError);
  EXPECT_THROW(OrderAutomorphism({Q(0)}, {LinearPiece{1, 0}, LinearPiece{-1, 0}}), DomainError);
  EXPECT_THROW(OrderAutomorphism({Q(1), Q(0)}, {LinearPiece{}, LinearPiece{}, LinearPiece{}}), DomainError);
  EXPECT_THROW(OrderAutomorphism({Q(0)}, {LinearPiece{}}), DomainError);
}

TEST(OrderAutomorphism, GroupLawsOnSamples) {
  Rng rng(61);
  for (int i = 0; i < 50; ++i) {
    const OrderAutomorphism a = RandomFixedPointFree(rng);
    const OrderAutomorphism b = RandomFixedPointFree(rng);
    EXPECT_FALSE(a.fixed_point().has_value()) << a.str();
    for (long long n = -6; n <= 6; ++n) {
      const Rational x = Q(n, 3);
      EXPECT_EQ(a.inverse()(a(x)), x);
      EXPECT_EQ(a.compose(b)(x), a(b(x)));
      EXPECT_LT(a(x), a(x + Q(1, 7)));
      EXPECT_NE(a(x), x);
    }
  }
}

}  // namespace
}  // namespace upw
