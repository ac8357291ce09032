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

#ifndef UPW_ULTRAPOWER_HPP_
#define UPW_ULTRAPOWER_HPP_

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "upw/formula.hpp"
#include "upw/integer.hpp"
#include "upw/qe.hpp"
#include "upw/ultrafilter.hpp"

namespace upw {

// A point of the dense index order, an exact rational.
class IndexLabel {
 public:
  IndexLabel() = default;
  IndexLabel(Rational position) : position_(std::move(position)) {}  // NOLINT(google-explicit-constructor)
  IndexLabel(long long position) : position_(position) {}            // NOLINT(google-explicit-constructor)

  // "3", "-1/2", "0.25"
  static IndexLabel Parse(const std::string& text);
  static IndexLabel Between(const IndexLabel& a, const IndexLabel& b);
  static IndexLabel Above(const IndexLabel& a);

  const Rational& position() const { return position_; }
  std::string str() const { return ToString(position_); }

  friend bool operator==(const IndexLabel& a, const IndexLabel& b) { return a.position_ == b.position_; }
  friend std::strong_ordering operator<=>(const IndexLabel& a, const IndexLabel& b) {
    if (a.position_ < b.position_) return std::strong_ordering::less;
    if (b.position_ < a.position_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational position_;
};

// f(i1, ..., ik): the graph of a definable total function N^k -> N applied to
// a strictly increasing tuple of index labels. The graph is stored over the
// variables x1..xk (inputs) and z (output).
class GeneralizedTerm {
 public:
  // Certifies totality and functionality by deciding the corresponding
  // sentences. Throws DomainError naming the failed condition.
  static GeneralizedTerm Make(const Formula& graph, const std::vector<Variable>& inputs, const Variable& output,
                              std::vector<IndexLabel> indices, const QeOptions& options = {});
  // The graph z = term(inputs); always total and functional.
  static GeneralizedTerm FromTerm(const LinearTerm& term, const std::vector<Variable>& inputs,
                                  std::vector<IndexLabel> indices);
  // Skips certification; the caller guarantees a total functional graph.
  static GeneralizedTerm Unchecked(const Formula& graph, const std::vector<Variable>& inputs,
                                   const Variable& output, std::vector<IndexLabel> indices);
  // [id@i]
  static GeneralizedTerm Generator(const IndexLabel& i);
  // The constant m over no indices.
  static GeneralizedTerm Constant(const Integer& m);

  static Variable InputName(std::size_t position);  // x1, x2, ...
  static const Variable& OutputName();              // z

  const Formula& graph() const { return graph_; }
  const std::vector<IndexLabel>& indices() const { return indices_; }
  std::size_t arity() const { return indices_.size(); }
  std::vector<Variable> inputs() const;

  // The same graph over other labels; throws DomainError unless strictly
  // increasing and of the same length.
  GeneralizedTerm with_indices(std::vector<IndexLabel> indices) const;
  // Graph with inputs and output renamed (capture-avoiding).
  Formula graph_over(const std::vector<Variable>& inputs, const Variable& output) const;

  // Literal syntax: [id@q], [const@n] or [graph "F" vars (x1,..) out z @ q1,..].
  std::string str() const;

  friend bool operator==(const GeneralizedTerm& a, const GeneralizedTerm& b) {
    return a.graph_ == b.graph_ && a.indices_ == b.indices_;
  }

 private:
  GeneralizedTerm(Formula graph, std::vector<IndexLabel> indices);

  Formula graph_;
  std::vector<IndexLabel> indices_;
};

// t with every index moved by `delta`.
GeneralizedTerm Shifted(const GeneralizedTerm& t, const Rational& delta);

struct StandardResult {
  bool standard = false;
  std::optional<Integer> value;
};

// Ult(N, U, I) over the full rational index order.
class UltrapowerModel {
 public:
  explicit UltrapowerModel(UltrafilterOracle oracle);

  const UltrafilterOracle& oracle() const { return oracle_; }

  // The set { u : phi(args[u]) } over the union of the argument indices and
  // `extra`, one coordinate per label in label order.
  IndexedSetFormula Unfold(const Formula& phi, const std::vector<Variable>& vars,
                           const std::vector<GeneralizedTerm>& args,
                           const std::vector<IndexLabel>& extra = {}) const;

  // U*-equivalence.
  bool Eq(const GeneralizedTerm& s, const GeneralizedTerm& t) const;
  // U*-equivalence computed over the union of the indices and `extra`.
  bool EqOver(const GeneralizedTerm& s, const GeneralizedTerm& t, const std::vector<IndexLabel>& extra) const;

  // M* |= phi(args), vars naming the argument positions. Throws DomainError on
  // arity mismatch or stray free variables.
  bool Eval(const Formula& phi, const std::vector<Variable>& vars, const std::vector<GeneralizedTerm>& args) const;
  bool EvalOver(const Formula& phi, const std::vector<Variable>& vars, const std::vector<GeneralizedTerm>& args,
                const std::vector<IndexLabel>& extra) const;
  // Same truth value, computed by recursion on phi with least-witness Skolem
  // terms for the existential steps.
  bool EvalLos(const Formula& phi, const std::vector<Variable>& vars, const std::vector<GeneralizedTerm>& args) const;

  // The least-witness Skolem term for exists w. psi over the argument indices.
  GeneralizedTerm SkolemTerm(const Formula& psi, const Variable& w, const std::vector<Variable>& vars,
                             const std::vector<GeneralizedTerm>& args) const;

  // Shifted-copy criterion, with the value extracted for standard terms.
  StandardResult IsStandard(const GeneralizedTerm& t) const;
  // The indices t essentially depends on.
  std::set<IndexLabel> Support(const GeneralizedTerm& t) const;
  // t with its inessential inputs sent to the ultrafilter limit.
  GeneralizedTerm RestrictToSupport(const GeneralizedTerm& t) const;

 private:
  UltrafilterOracle oracle_;
};

GeneralizedTerm Embed(const Integer& m);

}  // namespace upw

#endif  // UPW_ULTRAPOWER_HPP_
