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

#ifndef UPW_QE_HPP_
#define UPW_QE_HPP_

#include <cstddef>
#include <set>
#include <vector>

#include "upw/formula.hpp"
#include "upw/integer.hpp"
#include "upw/linear_term.hpp"

namespace upw {

struct QeOptions {
  // Ceiling on the bit length of any coefficient produced during
  // elimination; exceeding it raises ResourceLimitError.
  std::size_t max_bits = 4096;
};

// Quantifier-free formula equivalent to `f` over N, with the same declared
// free variables. Cooper's method, relativized to x >= 0.
Formula Eliminate(const Formula& f, const QeOptions& options = {});

// Truth of a sentence in (N, 0, 1, +, <, Div_m). Throws DomainError when
// free variables are present.
bool Decide(const Formula& sentence, const QeOptions& options = {});

// One atom isolated on the scaled target variable X = scale * x:
//   kBelow    X < rest
//   kAbove    rest < X
//   kEqual    X = rest
//   kDivides  modulus | X + rest
struct XAtom {
  enum class Shape { kBelow, kAbove, kEqual, kDivides };
  Shape shape;
  LinearTerm rest;  // free of x; may carry negative coefficients
  Integer modulus = 0;
};

struct XConjunct {
  std::vector<XAtom> atoms;
  Formula residual;  // conjunction of the atoms that do not mention x
};

// x-isolated disjunctive form of a quantifier-free formula. Every coefficient
// of x is unified to `scale`, and the isolated variable stands for scale * x;
// when scale > 1 each conjunct carries Div_scale(X). `moduli` are the
// divisibility moduli of atoms mentioning X.
struct XNormalForm {
  Variable variable;
  Integer scale = 1;
  std::vector<XConjunct> disjuncts;
  std::set<Integer> moduli;

  // lcm of `moduli` (1 when empty).
  Integer modulus_lcm() const;
  // Back to a formula over the original variable.
  Formula to_formula() const;
};

// Throws DomainError if `f` has quantifiers.
XNormalForm ToXNormalForm(const Formula& f, const Variable& x);

// ToXNormalForm(f, x).modulus_lcm() without expanding to disjunctive form.
Integer XModulusLcm(const Formula& f, const Variable& x);

}  // namespace upw

#endif  // UPW_QE_HPP_
