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

#include "upw/ultrapower.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "upw/error.hpp"

namespace upw {
namespace {

void CheckIncreasing(const std::vector<IndexLabel>& indices) {
  for (std::size_t i = 1; i < indices.size(); ++i) {
    if (!(indices[i - 1] < indices[i])) {
      throw DomainError("indices must be strictly increasing: " + indices[i - 1].str() + " then " + indices[i].str());
    }
  }
}

std::vector<IndexLabel> UnionOf(const std::vector<GeneralizedTerm>& args, const std::vector<IndexLabel>& extra) {
  std::set<IndexLabel> labels(extra.begin(), extra.end());
  for (const GeneralizedTerm& t : args) labels.insert(t.indices().begin(), t.indices().end());
  return {labels.begin(), labels.end()};
}

// Coordinate names u1, u2, ... avoiding `avoid`.
std::vector<Variable> CoordinateNames(std::size_t n, const std::set<Variable>& avoid) {
  std::string stem = "u";
  auto clashes = [&](const std::string& s) {
    for (std::size_t i = 1; i <= n; ++i) {
      if (avoid.count(s + std::to_string(i))) return true;
    }
    return false;
  };
  while (clashes(stem)) stem += "u";
  std::vector<Variable> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

// The coordinate variables feeding t, given coordinates for `labels`.
std::vector<Variable> InputsFor(const GeneralizedTerm& t, const std::vector<IndexLabel>& labels,
                                const std::vector<Variable>& coords) {
  std::vector<Variable> out;
  for (const IndexLabel& i : t.indices()) {
    const auto it = std::lower_bound(labels.begin(), labels.end(), i);
    out.push_back(coords[static_cast<std::size_t>(it - labels.begin())]);
  }
  return out;
}

void CheckArguments(const Formula& phi, const std::vector<Variable>& vars, const std::vector<GeneralizedTerm>& args) {
  if (vars.size() != args.size()) {
    throw DomainError("arity mismatch: " + std::to_string(vars.size()) + " variables for " +
                      std::to_string(args.size()) + " arguments");
  }
  const std::set<Variable> named(vars.begin(), vars.end());
  if (named.size() != vars.size()) throw DomainError("argument variables must be distinct");
  for (const Variable& v : phi.free_vars()) {
    if (!named.count(v)) throw DomainError("free variable '" + v + "' is not an argument");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// IndexLabel

IndexLabel IndexLabel::Parse(const std::string& text) { return IndexLabel(ParseRational(text)); }

IndexLabel IndexLabel::Between(const IndexLabel& a, const IndexLabel& b) {
  return IndexLabel(Rational((a.position_ + b.position_) / 2));
}

IndexLabel IndexLabel::Above(const IndexLabel& a) { return IndexLabel(Rational(a.position_ + 1)); }

// ---------------------------------------------------------------------------
// GeneralizedTerm

GeneralizedTerm::GeneralizedTerm(Formula graph, std::vector<IndexLabel> indices)
    : graph_(std::move(graph)), indices_(std::move(indices)) {}

Variable GeneralizedTerm::InputName(std::size_t position) { return "x" + std::to_string(position + 1); }

const Variable& GeneralizedTerm::OutputName() {
  static const Variable kOutput = "z";
  return kOutput;
}

std::vector<Variable> GeneralizedTerm::inputs() const {
  std::vector<Variable> out;
  for (std::size_t i = 0; i < arity(); ++i) out.push_back(InputName(i));
  return out;
}

GeneralizedTerm GeneralizedTerm::Unchecked(const Formula& graph, const std::vector<Variable>& inputs,
                                           const Variable& output, std::vector<IndexLabel> indices) {
  if (inputs.size() != indices.size()) {
    throw DomainError("a term over " + std::to_string(indices.size()) + " indices needs as many inputs, got " +
                      std::to_string(inputs.size()));
  }
  CheckIncreasing(indices);
  std::set<Variable> allowed(inputs.begin(), inputs.end());
  if (allowed.size() != inputs.size()) throw DomainError("input variables must be distinct");
  if (allowed.count(output)) throw DomainError("output variable '" + output + "' is also an input");
  allowed.insert(output);
  for (const Variable& v : graph.free_vars()) {
    if (!allowed.count(v)) throw DomainError("graph has a free variable '" + v + "' that is neither input nor output");
  }
  std::map<Variable, Variable> renaming;
  for (std::size_t i = 0; i < inputs.size(); ++i) renaming.emplace(inputs[i], InputName(i));
  renaming.emplace(output, OutputName());
  std::set<Variable> declared;
  for (const auto& [from, to] : renaming) declared.insert(to);
  Formula canonical = Canonicalize(RenameFree(graph.with_free_vars(allowed), renaming)).with_free_vars(declared);
  return GeneralizedTerm(std::move(canonical), std::move(indices));
}

GeneralizedTerm GeneralizedTerm::Make(const Formula& graph, const std::vector<Variable>& inputs,
                                      const Variable& output, std::vector<IndexLabel> indices,
                                      const QeOptions& options) {
  GeneralizedTerm t = Unchecked(graph, inputs, output, std::move(indices));
  const std::vector<Variable> xs = t.inputs();
  const Variable& z = OutputName();
  const Formula& g = t.graph();
  const Variable z2 = FreshVariable("w", g.occurring_vars());
  const Formula g2 = Substitute(g, z, LinearTerm::Var(z2));
  const Formula unique = Formula::Forall(
      xs, Formula::Forall(z, Formula::Forall(z2, Formula::Implies(Formula::And(g, g2),
                                                                  Formula::Equal(LinearTerm::Var(z),
                                                                                 LinearTerm::Var(z2))))));
  if (!Decide(unique, options)) throw DomainError("graph is not functional: some input has two outputs");
  if (!Decide(Formula::Forall(xs, Formula::Exists(z, g)), options)) {
    throw DomainError("graph is not total: some input has no output");
  }
  return t;
}

GeneralizedTerm GeneralizedTerm::FromTerm(const LinearTerm& term, const std::vector<Variable>& inputs,
                                          std::vector<IndexLabel> indices) {
  Variable out = "z";
  std::set<Variable> taken(inputs.begin(), inputs.end());
  const std::set<Variable> used = term.variables();
  taken.insert(used.begin(), used.end());
  out = FreshVariable(out, taken);
  for (const auto& [v, c] : term.coefficients()) {
    if (c < 0) throw DomainError("term coefficients must be nonnegative");
    if (std::find(inputs.begin(), inputs.end(), v) == inputs.end()) {
      throw DomainError("term variable '" + v + "' is not an input");
    }
  }
  if (term.constant() < 0) throw DomainError("term constant must be nonnegative");
  return Unchecked(Formula::Equal(LinearTerm::Var(out), term), inputs, out, std::move(indices));
}

GeneralizedTerm GeneralizedTerm::Generator(const IndexLabel& i) {
  return Unchecked(Formula::Equal(LinearTerm::Var("z"), LinearTerm::Var("x1")), {"x1"}, "z", {i});
}

GeneralizedTerm GeneralizedTerm::Constant(const Integer& m) {
  if (m < 0) throw DomainError("constants must be nonnegative, got " + ToString(m));
  return Unchecked(Formula::Equal(LinearTerm::Var("z"), LinearTerm(m)), {}, "z", {});
}

GeneralizedTerm GeneralizedTerm::with_indices(std::vector<IndexLabel> indices) const {
  if (indices.size() != indices_.size()) throw DomainError("relabeling must keep the arity");
  CheckIncreasing(indices);
  return GeneralizedTerm(graph_, std::move(indices));
}

Formula GeneralizedTerm::graph_over(const std::vector<Variable>& inputs, const Variable& output) const {
  if (inputs.size() != arity()) throw DomainError("graph_over: wrong number of inputs");
  std::map<Variable, Variable> renaming;
  for (std::size_t i = 0; i < inputs.size(); ++i) renaming.emplace(InputName(i), inputs[i]);
  renaming.emplace(OutputName(), output);
  return RenameFree(graph_, renaming);
}

std::string GeneralizedTerm::str() const {
  if (arity() == 1 && *this == Generator(indices_[0])) return "[id@" + indices_[0].str() + "]";
  if (arity() == 0 && graph_.kind() == Formula::Kind::kEqual && graph_.term().variables().size() == 1) {
    const Integer c = graph_.term().coefficient(OutputName());
    if (c == 1 || c == -1) {
      const Integer value = -graph_.term().constant() * c;
      if (value >= 0) return "[const@" + ToString(value) + "]";
    }
  }
  std::string out = "[graph \"" + Render(graph_) + "\" vars (";
  for (std::size_t i = 0; i < arity(); ++i) out += (i ? "," : "") + InputName(i);
  out += ") out " + OutputName() + " @ ";
  for (std::size_t i = 0; i < arity(); ++i) out += (i ? "," : "") + indices_[i].str();
  return out + "]";
}

GeneralizedTerm Shifted(const GeneralizedTerm& t, const Rational& delta) {
  std::vector<IndexLabel> moved;
  for (const IndexLabel& i : t.indices()) moved.emplace_back(Rational(i.position() + delta));
  return t.with_indices(std::move(moved));
}

GeneralizedTerm Embed(const Integer& m) { return GeneralizedTerm::Constant(m); }

// ---------------------------------------------------------------------------
// UltrapowerModel

UltrapowerModel::UltrapowerModel(UltrafilterOracle oracle) : oracle_(std::move(oracle)) {}

IndexedSetFormula UltrapowerModel::Unfold(const Formula& phi, const std::vector<Variable>& vars,
                                          const std::vector<GeneralizedTerm>& args,
                                          const std::vector<IndexLabel>& extra) const {
  CheckArguments(phi, vars, args);
  const std::vector<IndexLabel> labels = UnionOf(args, extra);
  std::set<Variable> avoid(vars.begin(), vars.end());
  avoid.insert(phi.occurring_vars().begin(), phi.occurring_vars().end());
  const std::vector<Variable> coords = CoordinateNames(labels.size(), avoid);
  std::vector<Formula> conj;
  for (std::size_t i = 0; i < args.size(); ++i) {
    conj.push_back(args[i].graph_over(InputsFor(args[i], labels, coords), vars[i]));
  }
  conj.push_back(phi);
  Formula body = Formula::Exists(vars, Formula::And(std::move(conj)));
  return IndexedSetFormula(Canonicalize(body), coords);
}

bool UltrapowerModel::Eq(const GeneralizedTerm& s, const GeneralizedTerm& t) const { return EqOver(s, t, {}); }

bool UltrapowerModel::EqOver(const GeneralizedTerm& s, const GeneralizedTerm& t,
                             const std::vector<IndexLabel>& extra) const {
  static const Formula kEqual = Formula::Equal(LinearTerm::Var("v1"), LinearTerm::Var("v2"));
  return EvalOver(kEqual, {"v1", "v2"}, {s, t}, extra);
}

bool UltrapowerModel::Eval(const Formula& phi, const std::vector<Variable>& vars,
                           const std::vector<GeneralizedTerm>& args) const {
  return EvalOver(phi, vars, args, {});
}

bool UltrapowerModel::EvalOver(const Formula& phi, const std::vector<Variable>& vars,
                               const std::vector<GeneralizedTerm>& args,
                               const std::vector<IndexLabel>& extra) const {
  return MemberN(oracle_, Unfold(phi, vars, args, extra));
}

GeneralizedTerm UltrapowerModel::SkolemTerm(const Formula& psi, const Variable& w, const std::vector<Variable>& vars,
                                            const std::vector<GeneralizedTerm>& args) const {
  std::vector<Variable> all_vars = vars;
  all_vars.push_back(w);
  std::vector<GeneralizedTerm> probe = args;
  probe.push_back(Embed(0));
  CheckArguments(psi, all_vars, probe);

  const std::vector<IndexLabel> labels = UnionOf(args, {});
  std::set<Variable> avoid(all_vars.begin(), all_vars.end());
  avoid.insert(psi.occurring_vars().begin(), psi.occurring_vars().end());
  const std::vector<Variable> coords = CoordinateNames(labels.size(), avoid);
  avoid.insert(coords.begin(), coords.end());
  const Variable w2 = FreshVariable(w + "_", avoid);
  const LinearTerm wt = LinearTerm::Var(w);
  const LinearTerm w2t = LinearTerm::Var(w2);
  const Formula psi2 = Substitute(psi, w, w2t);
  const Formula least = Formula::Or(
      Formula::And(psi, Formula::Forall(w2, Formula::Implies(Formula::Less(w2t, wt), Formula::Not(psi2)))),
      Formula::And(Formula::Not(Formula::Exists(w2, psi2)), Formula::Equal(wt, LinearTerm(0))));

  std::vector<Formula> conj;
  for (std::size_t i = 0; i < args.size(); ++i) {
    conj.push_back(args[i].graph_over(InputsFor(args[i], labels, coords), vars[i]));
  }
  conj.push_back(least);
  const Formula graph = Eliminate(Formula::Exists(vars, Formula::And(std::move(conj))), oracle_.qe_options());
  return GeneralizedTerm::Unchecked(graph, coords, w, labels);
}

bool UltrapowerModel::EvalLos(const Formula& phi, const std::vector<Variable>& vars,
                              const std::vector<GeneralizedTerm>& args) const {
  CheckArguments(phi, vars, args);
  using Kind = Formula::Kind;
  switch (phi.kind()) {
    case Kind::kTrue:
      return true;
    case Kind::kFalse:
      return false;
    case Kind::kLess:
    case Kind::kEqual:
    case Kind::kDivides:
      return Eval(phi, vars, args);
    case Kind::kNot:
      return !EvalLos(phi.body(), vars, args);
    case Kind::kAnd:
      return std::all_of(phi.children().begin(), phi.children().end(),
                         [&](const Formula& c) { return EvalLos(c, vars, args); });
    case Kind::kOr:
      return std::any_of(phi.children().begin(), phi.children().end(),
                         [&](const Formula& c) { return EvalLos(c, vars, args); });
    case Kind::kExists:
    case Kind::kForall: {
      std::set<Variable> avoid(vars.begin(), vars.end());
      avoid.insert(phi.occurring_vars().begin(), phi.occurring_vars().end());
      Variable w = phi.bound_variable();
      Formula body = phi.body();
      if (std::find(vars.begin(), vars.end(), w) != vars.end()) {
        const Variable fresh = FreshVariable(w, avoid);
        body = Substitute(body, w, LinearTerm::Var(fresh));
        w = fresh;
      }
      if (phi.kind() == Kind::kForall) body = Formula::Not(body);
      body = body.with_free_vars({w});
      std::vector<Variable> next_vars = vars;
      next_vars.push_back(w);
      std::vector<GeneralizedTerm> next_args = args;
      next_args.push_back(SkolemTerm(body, w, vars, args));
      const bool witnessed = EvalLos(body, next_vars, next_args);
      return phi.kind() == Kind::kExists ? witnessed : !witnessed;
    }
  }
  return false;
}

StandardResult UltrapowerModel::IsStandard(const GeneralizedTerm& t) const {
  StandardResult result;
  if (t.arity() > 0) {
    const Rational span = t.indices().back().position() - t.indices().front().position() + 1;
    if (!Eq(t, Shifted(t, span))) return result;
  }
  result.standard = true;

  // theta(c): { u : f[u] = c } is in U^k
  const std::vector<Variable> inputs = t.inputs();
  const Variable c = FreshVariable("c", {inputs.begin(), inputs.end()});
  const Formula theta = FoldTransforms(oracle_, IndexedSetFormula(t.graph_over(inputs, c), inputs));
  const LinearTerm ct = LinearTerm::Var(c);
  const QeOptions& options = oracle_.qe_options();
  auto some_value_at_most = [&](const Integer& n) {
    return Decide(Formula::Exists(c, Formula::And(Formula::LessEq(ct, LinearTerm(n)), theta)), options);
  };
  Integer hi = 1;
  while (!some_value_at_most(hi)) {
    hi *= 2;
    if (BitLength(hi) > options.max_bits) throw ResourceLimitError("standard value exceeds the coefficient ceiling");
  }
  Integer lo = 0;
  while (lo < hi) {
    const Integer mid = (lo + hi) / 2;
    if (some_value_at_most(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (!Eq(t, Embed(lo))) {
    throw InvariantViolation("extracted value " + ToString(lo) + " is not U*-equal to " + t.str());
  }
  result.value = lo;
  return result;
}

std::set<IndexLabel> UltrapowerModel::Support(const GeneralizedTerm& t) const {
  std::set<IndexLabel> out;
  const std::vector<IndexLabel>& ix = t.indices();
  for (std::size_t p = 0; p < ix.size(); ++p) {
    std::vector<IndexLabel> moved = ix;
    moved[p] = p + 1 < ix.size() ? IndexLabel::Between(ix[p], ix[p + 1]) : IndexLabel::Above(ix[p]);
    if (!Eq(t, t.with_indices(std::move(moved)))) out.insert(ix[p]);
  }
  return out;
}

GeneralizedTerm UltrapowerModel::RestrictToSupport(const GeneralizedTerm& t) const {
  const std::set<IndexLabel> support = Support(t);
  const std::vector<Variable> inputs = t.inputs();
  const QeOptions& options = oracle_.qe_options();
  std::vector<Variable> kept;
  std::vector<IndexLabel> kept_labels;
  for (std::size_t p = 0; p < inputs.size(); ++p) {
    if (support.count(t.indices()[p])) {
      kept.push_back(inputs[p]);
      kept_labels.push_back(t.indices()[p]);
    }
  }
  if (kept.size() == inputs.size()) return t;

  // Inputs above the last essential one go to the ultrafilter limit. An input
  // below an essential input e becomes L * floor(e / (N L)^j), j counting down
  // from e, which for large N realizes the generic order type up to the
  // coefficients of the graph.
  Formula base = t.graph();
  std::size_t top = inputs.size();
  while (top > 0 && !support.count(t.indices()[top - 1])) base = oracle_.transform(base, inputs[--top]);
  base = Eliminate(base, options);
  Integer l = 1;
  for (const Variable& v : inputs) {
    if (base.mentions(v)) l = Lcm(l, XModulusLcm(base, v));
  }
  std::set<Variable> avoid(inputs.begin(), inputs.end());
  avoid.insert(GeneralizedTerm::OutputName());
  const Variable q = FreshVariable("q", avoid);
  for (Integer n = 4; BitLength(n) <= 32; n *= 4) {
    Formula graph = base;
    std::size_t p = top;
    while (p-- > 0) {
      if (support.count(t.indices()[p])) continue;
      std::size_t e = p + 1;
      while (!support.count(t.indices()[e])) ++e;
      Integer d = 1;
      for (std::size_t j = p; j < e; ++j) d *= n * l;
      const LinearTerm qt = LinearTerm::Var(q);
      const LinearTerm xe = LinearTerm::Var(inputs[e]);
      const Formula choice = Formula::And({Formula::LessEq(qt * d, xe), Formula::Less(xe, qt * d + LinearTerm(d))});
      graph = Eliminate(Formula::Exists(q, Formula::And(choice, Substitute(graph, inputs[p], qt * l))), options);
    }
    const GeneralizedTerm candidate =
        GeneralizedTerm::Unchecked(graph, kept, GeneralizedTerm::OutputName(), kept_labels);
    if (Eq(t, candidate)) return candidate;
  }
  throw InvariantViolation("no restriction of " + t.str() + " to its support was found");
}

}  // namespace upw
