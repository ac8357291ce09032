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

#ifndef UPW_RANDOM_HPP_
#define UPW_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "upw/automorphism.hpp"
#include "upw/formula.hpp"
#include "upw/ultrapower.hpp"

namespace upw {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi].
  long long uniform(long long lo, long long hi);
  bool chance(double p);
  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(uniform(0, static_cast<long long>(items.size()) - 1))];
  }
  // An independent stream derived from this one.
  Rng split() { return Rng(engine_()); }

 private:
  std::mt19937_64 engine_;
};

struct FormulaShape {
  std::vector<Variable> free_vars = {"a", "b"};
  int max_coefficient = 5;
  int max_constant = 6;
  std::vector<int> moduli = {2, 3, 4, 5};
  int quantifier_blocks = 2;  // at most this many alternating blocks
  int block_size = 2;
  int qf_depth = 2;           // connective depth of quantifier-free parts
};

LinearTerm RandomTerm(Rng& rng, const std::vector<Variable>& vars, const FormulaShape& shape);
Formula RandomAtom(Rng& rng, const std::vector<Variable>& vars, const FormulaShape& shape);
Formula RandomQuantifierFree(Rng& rng, const std::vector<Variable>& vars, const FormulaShape& shape,
                             int depth);
// Alternating quantifier prefix over a quantifier-free matrix; free
// variables are drawn from shape.free_vars.
Formula RandomFormula(Rng& rng, const FormulaShape& shape);

// Every quantifier is guarded by "v <= w + c" with w an outer variable and
// 0 <= c <= guard_slack, so evaluation with quantifiers ranging over
// [0, bound] is exact whenever bound >= (free value bound) +
// guard_slack * (quantifier count).
Formula RandomGuardedFormula(Rng& rng, const FormulaShape& shape, int guard_slack = 3);

// A sentence: RandomFormula with all free variables replaced by numerals
// drawn from [0, max_numeral].
Formula RandomSentence(Rng& rng, const FormulaShape& shape, int max_numeral = 12);

// Graph of a definable function in the library of shapes (linear maps,
// min/max, residues, quotients, case splits on divisibility).
GeneralizedTerm RandomTerm(Rng& rng, const std::vector<IndexLabel>& indices);
// A term over `indices` whose class is the standard element `value`.
GeneralizedTerm RandomStandardTerm(Rng& rng, const std::vector<IndexLabel>& indices, const Integer& value);
// Strictly increasing labels drawn from [lo, hi] with denominators up to
// `max_denominator`.
std::vector<IndexLabel> RandomLabels(Rng& rng, std::size_t count, long long lo, long long hi,
                                     long long max_denominator = 1);
// Fixed-point-free piecewise-linear map with up to `max_breakpoints` breakpoints.
OrderAutomorphism RandomFixedPointFree(Rng& rng, int max_breakpoints = 2);

}  // namespace upw

#endif  // UPW_RANDOM_HPP_
