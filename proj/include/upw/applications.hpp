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

#ifndef UPW_APPLICATIONS_HPP_
#define UPW_APPLICATIONS_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "upw/automorphism.hpp"
#include "upw/ultrapower.hpp"

namespace upw {

// f(i1, ..., ik) |-> f(alpha(i1), ..., alpha(ik))
GeneralizedTerm Lift(const OrderAutomorphism& alpha, const GeneralizedTerm& t);

// Least m >= 1 with alpha^m(I0) disjoint from I0. Throws DomainError if alpha
// has a fixed point or I0 is empty.
unsigned SeparatingPower(const OrderAutomorphism& alpha, const std::set<IndexLabel>& labels);

struct Classification {
  bool fixed = false;  // eq(t, lift(alpha, t))
  StandardResult standard;
};

// Throws DomainError for an alpha with a fixed point, and
// InvariantViolation when "fixed iff standard" fails.
Classification Classify(const UltrapowerModel& model, const OrderAutomorphism& alpha, const GeneralizedTerm& t);

// The labels generating a submodel: a finite set, or every label >= a bound.
class GeneratedSubmodel {
 public:
  static GeneratedSubmodel Finite(std::set<IndexLabel> labels);
  static GeneratedSubmodel AtLeast(IndexLabel bound);

  bool contains(const IndexLabel& i) const;
  std::string str() const;

 private:
  std::set<IndexLabel> labels_;
  std::optional<IndexLabel> bound_;
};

// support(t) is contained in S.
bool InSubmodel(const UltrapowerModel& model, const GeneralizedTerm& t, const GeneratedSubmodel& s);

struct DemoReport {
  std::string name;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::vector<std::string> witnesses;
  std::vector<std::string> failures;

  bool passed() const { return violations == 0; }
};

// M_0 > M_1 > ... > M_depth with M_i generated by the integer labels >= i.
DemoReport RunChainDemo(const UltrapowerModel& model, int depth, int samples, std::uint64_t seed);

// M_S0 and M_S1 meet in the standard model for disjoint S0, S1.
DemoReport RunLatticeDemo(const UltrapowerModel& model, const std::set<IndexLabel>& s0,
                          const std::set<IndexLabel>& s1, int samples, std::uint64_t seed);

}  // namespace upw

#endif  // UPW_APPLICATIONS_HPP_
