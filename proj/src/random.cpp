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

#include "upw/random.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "upw/error.hpp"

namespace upw {
namespace {

const std::vector<Variable> kBoundNames = {"x", "y", "z", "w", "u", "v", "s", "t", "r", "p"};

std::vector<Variable> BoundNamesAvoiding(const std::vector<Variable>& taken) {
  std::vector<Variable> out;
  for (const Variable& v : kBoundNames) {
    if (std::find(taken.begin(), taken.end(), v) == taken.end()) out.push_back(v);
  }
  return out;
}

LinearTerm X(std::size_t i) { return LinearTerm::Var(GeneralizedTerm::InputName(i)); }
LinearTerm Z() { return LinearTerm::Var(GeneralizedTerm::OutputName()); }
LinearTerm K(long long c) { return LinearTerm(Integer(c)); }

Formula Min(const LinearTerm& a, const LinearTerm& b) {
  return Formula::Or(Formula::And(Formula::Less(a, b), Formula::Equal(Z(), a)),
                     Formula::And(Formula::LessEq(b, a), Formula::Equal(Z(), b)));
}

Formula Max(const LinearTerm& a, const LinearTerm& b) {
  return Formula::Or(Formula::And(Formula::Less(b, a), Formula::Equal(Z(), a)),
                     Formula::And(Formula::LessEq(a, b), Formula::Equal(Z(), b)));
}

// z = offset + (a mod d)
Formula Residue(const LinearTerm& a, long long d, long long offset) {
  return Formula::And({Formula::LessEq(K(offset), Z()), Formula::Less(Z(), K(offset + d)),
                       Formula::Divides(d, a + K(offset) - Z())});
}

// z = a div d
Formula Quotient(const LinearTerm& a, long long d) {
  return Formula::And(Formula::LessEq(Z() * d, a), Formula::Less(a, Z() * d + K(d)));
}

LinearTerm RandomInputTerm(Rng& rng, std::size_t arity) {
  LinearTerm t = K(rng.uniform(0, 3));
  for (std::size_t i = 0; i < arity; ++i) {
    if (rng.chance(0.6)) t += X(i) * Integer(rng.uniform(1, 2));
  }
  return t;
}

GeneralizedTerm Build(const Formula& graph, const std::vector<IndexLabel>& indices) {
  std::vector<Variable> inputs;
  for (std::size_t i = 0; i < indices.size(); ++i) inputs.push_back(GeneralizedTerm::InputName(i));
  return GeneralizedTerm::Unchecked(graph, inputs, GeneralizedTerm::OutputName(), indices);
}

}  // namespace

long long Rng::uniform(long long lo, long long hi) {
  if (hi < lo) throw DomainError("empty random range");
  return std::uniform_int_distribution<long long>(lo, hi)(engine_);
}

bool Rng::chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_) < p; }

LinearTerm RandomTerm(Rng& rng, const std::vector<Variable>& vars, const FormulaShape& shape) {
  LinearTerm t = K(rng.chance(0.5) ? rng.uniform(0, shape.max_constant) : 0);
  if (vars.empty()) return t;
  const long long count = rng.uniform(1, std::min<long long>(2, static_cast<long long>(vars.size())));
  for (long long k = 0; k < count; ++k) {
    t += LinearTerm::Var(rng.pick(vars), Integer(rng.uniform(1, shape.max_coefficient)));
  }
  return t;
}

Formula RandomAtom(Rng& rng, const std::vector<Variable>& vars, const FormulaShape& shape) {
  switch (rng.uniform(0, 3)) {
    case 0:
      return Formula::Less(RandomTerm(rng, vars, shape), RandomTerm(rng, vars, shape));
    case 1:
      return Formula::LessEq(RandomTerm(rng, vars, shape), RandomTerm(rng, vars, shape));
    case 2:
      return Formula::Equal(RandomTerm(rng, vars, shape), RandomTerm(rng, vars, shape));
    default:
      return Formula::Divides(rng.pick(shape.moduli), RandomTerm(rng, vars, shape));
  }
}

Formula RandomQuantifierFree(Rng& rng, const std::vector<Variable>& vars, const FormulaShape& shape, int depth) {
  if (depth <= 0 || rng.chance(0.3)) return RandomAtom(rng, vars, shape);
  switch (rng.uniform(0, 2)) {
    case 0:
      return Formula::Not(RandomQuantifierFree(rng, vars, shape, depth - 1));
    case 1:
      return Formula::And(RandomQuantifierFree(rng, vars, shape, depth - 1),
                          RandomQuantifierFree(rng, vars, shape, depth - 1));
    default:
      return Formula::Or(RandomQuantifierFree(rng, vars, shape, depth - 1),
                         RandomQuantifierFree(rng, vars, shape, depth - 1));
  }
}

Formula RandomFormula(Rng& rng, const FormulaShape& shape) {
  std::vector<Variable> names = BoundNamesAvoiding(shape.free_vars);
  std::vector<Variable> scope = shape.free_vars;
  std::vector<std::pair<bool, Variable>> prefix;  // (existential, variable)
  const int blocks = static_cast<int>(rng.uniform(0, shape.quantifier_blocks));
  bool existential = rng.chance(0.5);
  std::size_t next = 0;
  for (int b = 0; b < blocks && next < names.size(); ++b) {
    const long long size = rng.uniform(1, shape.block_size);
    for (long long k = 0; k < size && next < names.size(); ++k) {
      prefix.emplace_back(existential, names[next]);
      scope.push_back(names[next++]);
    }
    existential = !existential;
  }
  Formula body = RandomQuantifierFree(rng, scope, shape, shape.qf_depth);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    body = it->first ? Formula::Exists(it->second, body) : Formula::Forall(it->second, body);
  }
  return body.with_free_vars({shape.free_vars.begin(), shape.free_vars.end()});
}

Formula RandomGuardedFormula(Rng& rng, const FormulaShape& shape, int guard_slack) {
  std::vector<Variable> names = BoundNamesAvoiding(shape.free_vars);
  std::vector<Variable> scope = shape.free_vars;
  struct Binder {
    bool existential;
    Variable var;
    Formula guard;
  };
  std::vector<Binder> prefix;
  const int blocks = static_cast<int>(rng.uniform(0, shape.quantifier_blocks));
  bool existential = rng.chance(0.5);
  std::size_t next = 0;
  for (int b = 0; b < blocks && next < names.size(); ++b) {
    const long long size = rng.uniform(1, shape.block_size);
    for (long long k = 0; k < size && next < names.size(); ++k) {
      const Variable& v = names[next++];
      LinearTerm limit = K(rng.uniform(0, guard_slack));
      if (!scope.empty() && rng.chance(0.8)) limit += LinearTerm::Var(rng.pick(scope));
      prefix.push_back({existential, v, Formula::LessEq(LinearTerm::Var(v), limit)});
      scope.push_back(v);
    }
    existential = !existential;
  }
  Formula body = RandomQuantifierFree(rng, scope, shape, shape.qf_depth);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    body = it->existential ? Formula::Exists(it->var, Formula::And(it->guard, body))
                           : Formula::Forall(it->var, Formula::Implies(it->guard, body));
  }
  return body.with_free_vars({shape.free_vars.begin(), shape.free_vars.end()});
}

Formula RandomSentence(Rng& rng, const FormulaShape& shape, int max_numeral) {
  const Formula f = RandomFormula(rng, shape);
  std::map<Variable, LinearTerm> numerals;
  for (const Variable& v : shape.free_vars) numerals.emplace(v, K(rng.uniform(0, max_numeral)));
  return Canonicalize(Substitute(f, numerals).with_declared_free_vars({}));
}

GeneralizedTerm RandomTerm(Rng& rng, const std::vector<IndexLabel>& indices) {
  const std::size_t k = indices.size();
  if (k == 0) return Build(Formula::Equal(Z(), K(rng.uniform(0, 9))), indices);
  const std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(k) - 1));
  const std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(k) - 1));
  switch (rng.uniform(0, 8)) {
    case 0:
      return Build(Formula::Equal(Z(), RandomInputTerm(rng, k)), indices);
    case 1:
      return Build(Min(X(i), K(rng.uniform(0, 6))), indices);
    case 2:
      return Build(rng.chance(0.5) ? Max(X(i), X(j)) : Min(X(i), X(j) + K(rng.uniform(0, 2))), indices);
    case 3:
      return Build(Residue(X(i) + X(j), rng.uniform(2, 4), rng.uniform(0, 3)), indices);
    case 4:
      return Build(Quotient(X(i) + K(rng.uniform(0, 2)), rng.uniform(2, 3)), indices);
    case 5: {
      const Formula test = Formula::Divides(rng.uniform(2, 3), X(i) + K(rng.uniform(0, 2)));
      return Build(Formula::Or(Formula::And(test, Formula::Equal(Z(), RandomInputTerm(rng, k))),
                               Formula::And(Formula::Not(test), Formula::Equal(Z(), RandomInputTerm(rng, k)))),
                   indices);
    }
    case 6:
      return Build(Formula::Equal(Z(), K(rng.uniform(0, 9))), indices);
    case 7:
      // truncated difference x_j - x_i
      return Build(Formula::Or(Formula::And(Formula::LessEq(X(i), X(j)), Formula::Equal(Z() + X(i), X(j))),
                               Formula::And(Formula::Less(X(j), X(i)), Formula::Equal(Z(), K(0)))),
                   indices);
    default:
      return Build(Min(RandomInputTerm(rng, k), RandomInputTerm(rng, k)), indices);
  }
}

GeneralizedTerm RandomStandardTerm(Rng& rng, const std::vector<IndexLabel>& indices, const Integer& value) {
  const long long v = value.convert_to<long long>();
  const std::size_t k = indices.size();
  if (k == 0) return Build(Formula::Equal(Z(), K(v)), indices);
  const std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(k) - 1));
  switch (rng.uniform(0, 4)) {
    case 0:
      return Build(Formula::Equal(Z(), K(v)), indices);
    case 1:
      return Build(Min(X(i) + K(rng.uniform(0, 2)), K(v)), indices);
    case 2:
      return Build(Residue(X(i) * Integer(rng.uniform(1, 2)), rng.uniform(2, 5), v), indices);
    case 3: {
      const Formula test = Formula::Divides(rng.uniform(2, 4), X(i));
      return Build(Formula::Or(Formula::And(test, Formula::Equal(Z(), K(v))),
                               Formula::And(Formula::Not(test), Formula::Equal(Z(), RandomInputTerm(rng, k)))),
                   indices);
    }
    default: {
      // v + (x_i - x_j truncated) with i < j vanishes on increasing tuples
      if (k < 2) return Build(Min(X(i), K(v)), indices);
      const std::size_t lo = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(k) - 2));
      const std::size_t hi = static_cast<std::size_t>(rng.uniform(static_cast<long long>(lo) + 1,
                                                                  static_cast<long long>(k) - 1));
      return Build(Formula::Or(Formula::And(Formula::Less(X(hi), X(lo)), Formula::Equal(Z() + X(hi), X(lo) + K(v))),
                               Formula::And(Formula::LessEq(X(lo), X(hi)), Formula::Equal(Z(), K(v)))),
                   indices);
    }
  }
}

std::vector<IndexLabel> RandomLabels(Rng& rng, std::size_t count, long long lo, long long hi,
                                     long long max_denominator) {
  std::set<IndexLabel> labels;
  if (static_cast<unsigned long long>((hi - lo + 1) * max_denominator) < count) {
    throw DomainError("label range too small");
  }
  while (labels.size() < count) {
    const long long den = rng.uniform(1, max_denominator);
    const long long num = rng.uniform(lo * den, hi * den);
    labels.insert(IndexLabel(Rational(num, den)));
  }
  return {labels.begin(), labels.end()};
}

OrderAutomorphism RandomFixedPointFree(Rng& rng, int max_breakpoints) {
  const int sign = rng.chance(0.5) ? 1 : -1;
  const long long n = rng.uniform(0, max_breakpoints);
  if (n == 0) return OrderAutomorphism::Translation(Rational(sign * rng.uniform(1, 4), rng.uniform(1, 2)));
  const std::vector<Rational> shifts = {Rational(1, 2), Rational(1), Rational(2), Rational(3)};
  for (;;) {
    std::vector<Rational> b, y;
    long long at = rng.uniform(-4, 2);
    for (long long k = 0; k < n; ++k) {
      b.emplace_back(at);
      y.push_back(b.back() + sign * rng.pick(shifts));
      at += rng.uniform(1, 4);
    }
    bool increasing = true;
    for (std::size_t k = 1; k < y.size(); ++k) increasing = increasing && y[k - 1] < y[k];
    if (!increasing) continue;
    const std::vector<Rational> gentle = {Rational(1), Rational(1, 2)};
    const std::vector<Rational> steep = {Rational(1), Rational(2)};
    const Rational left = sign > 0 ? rng.pick(gentle) : rng.pick(steep);
    const Rational right = sign > 0 ? rng.pick(steep) : rng.pick(gentle);
    std::vector<LinearPiece> pieces;
    pieces.push_back({left, y.front() - left * b.front()});
    for (std::size_t k = 1; k < b.size(); ++k) {
      const Rational slope = (y[k] - y[k - 1]) / (b[k] - b[k - 1]);
      pieces.push_back({slope, y[k] - slope * b[k]});
    }
    pieces.push_back({right, y.back() - right * b.back()});
    return OrderAutomorphism(b, pieces);
  }
}

}  // namespace upw
