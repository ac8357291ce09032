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

#ifndef UPW_EVALUATE_HPP_
#define UPW_EVALUATE_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "upw/formula.hpp"
#include "upw/integer.hpp"
#include "upw/linear_term.hpp"

namespace upw {

// Satisfaction in the standard model with every quantifier relativized to
// [0, bound]. Quantifier-free formulas are decided exactly. The assignment
// must cover free_vars(f); throws DomainError otherwise.
bool Evaluate(const Formula& f, const Assignment& assignment, const Integer& bound = 0);

// Evaluate() prepared once for repeated use. Small coefficients and values
// run on machine integers; anything larger falls back to exact arithmetic.
class BoundedEvaluator {
 public:
  explicit BoundedEvaluator(const Formula& f);

  bool operator()(const Assignment& assignment, const Integer& bound = 0) const;

 private:
  struct Node {
    Formula::Kind kind;
    std::vector<std::pair<int, std::int64_t>> coefficients;  // (slot, coefficient)
    std::int64_t constant = 0;
    std::int64_t modulus = 0;
    int slot = -1;  // bound variable of a quantifier
    std::vector<int> children;
  };

  int Compile(const Formula& f, std::map<Variable, int>& scope);
  bool Run(int node, std::vector<std::int64_t>& values, std::int64_t bound) const;
  std::int64_t Limit(const Node& q, const std::vector<std::int64_t>& values, std::int64_t bound) const;

  Formula formula_;
  bool compact_ = true;
  std::vector<Node> nodes_;
  std::map<Variable, int> free_slots_;
  int slots_ = 0;
  int root_ = -1;
};

}  // namespace upw

#endif  // UPW_EVALUATE_HPP_
