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

#ifndef UPW_ULTRAFILTER_HPP_
#define UPW_ULTRAFILTER_HPP_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "upw/formula.hpp"
#include "upw/qe.hpp"

namespace upw {

// An ultrafilter on the definable subsets of N, given by its amenability
// transform: phi(x, y...) |-> U_phi(y...), with
//   { x : phi(x, m...) } in U   iff   U_phi(m...) holds.
class UltrafilterOracle {
 public:
  using TransformFn = std::function<Formula(const Formula& phi, const Variable& x)>;

  UltrafilterOracle(std::string name, TransformFn transform, QeOptions options = {});

  const std::string& name() const { return name_; }
  const QeOptions& qe_options() const { return options_; }

  // U_phi with free variables free_vars(phi) \ {x}. Throws DomainError if x is
  // not free in phi.
  Formula transform(const Formula& phi, const Variable& x) const;

  // Membership of a one-variable set with no other free variables.
  bool member(const Formula& phi, const Variable& x) const;

 private:
  std::string name_;
  TransformFn transform_;
  QeOptions options_;
};

// The type "x exceeds every element and is divisible by every modulus".
UltrafilterOracle BuiltinInfinityUltrafilter(const QeOptions& options = {});

// Transform of the builtin ultrafilter: the x -> infinity projection of the
// eliminated formula, quantifier-free over the remaining variables.
Formula InfinityTransform(const Formula& phi, const Variable& x, const QeOptions& options = {});

// The explicit amenability witness  exists a. forall x. (a < x & Div_L(x)) -> psi,
// where psi = Eliminate(phi) and L is the lcm of the moduli of x in its
// x-normal form. Equivalent to InfinityTransform.
Formula WitnessFormula(const Formula& phi, const Variable& x, const QeOptions& options = {});

// A definable subset of N^n: the tuples (x1 < ... < xn in index position)
// satisfying `formula`; any other free variables are parameters.
class IndexedSetFormula {
 public:
  // Throws DomainError on repeated variables.
  IndexedSetFormula(Formula formula, std::vector<Variable> vars);

  const Formula& formula() const { return formula_; }
  const std::vector<Variable>& vars() const { return vars_; }
  std::size_t dimension() const { return vars_.size(); }
  // Free variables of the formula that are not coordinates.
  std::set<Variable> parameters() const;

 private:
  Formula formula_;
  std::vector<Variable> vars_;
};

// Folds the transform over the coordinates from last to first. The result
// mentions only the parameters.
Formula FoldTransforms(const UltrafilterOracle& u, const IndexedSetFormula& x);

// Membership in U^n. Throws DomainError if parameters remain.
bool MemberN(const UltrafilterOracle& u, const IndexedSetFormula& x);

// The fiber over numeral values for an initial segment of the coordinates.
// Throws DomainError if `values` does not assign exactly a prefix.
IndexedSetFormula Section(const IndexedSetFormula& x, const std::map<Variable, Integer>& values);
IndexedSetFormula Section(const IndexedSetFormula& x, const std::vector<Integer>& prefix);

}  // namespace upw

#endif  // UPW_ULTRAFILTER_HPP_
