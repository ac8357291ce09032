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


#include "automaton.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

namespace upw::oracle {
namespace {

using Kind = Formula::Kind;

thread_local std::size_t state_budget = 0;  // 0: unlimited

// Breadth-first construction from a start state and a transition function.
template <class State>
Automaton Explore(std::vector<Variable> vars, const State& start,
                  const std::function<State(const State&, std::size_t)>& step,
                  const std::function<bool(const State&)>& accepting) {
  Automaton a;
  a.vars = std::move(vars);
  const std::size_t letters = a.letters();
  std::map<State, int> ids;
  std::deque<State> queue;
  ids.emplace(start, 0);
  queue.push_back(start);
  std::vector<State> order{start};
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    for (std::size_t l = 0; l < letters; ++l) {
      const State t = step(s, l);
      auto [it, fresh] = ids.emplace(t, static_cast<int>(ids.size()));
      if (fresh && state_budget != 0 && ids.size() > state_budget) throw BudgetExceeded("automaton state budget exceeded");
      if (fresh) {
        queue.push_back(t);
        order.push_back(t);
      }
      a.next.push_back(it->second);
    }
  }
  // next was filled in BFS order, which matches the id order.
  for (const State& s : order) a.accept.push_back(accepting(s) ? 1 : 0);
  return a;
}

Automaton Minimize(const Automaton& a) {
  const std::size_t n = a.states();
  const std::size_t letters = a.letters();
  std::vector<int> cls(n);
  for (std::size_t q = 0; q < n; ++q) cls[q] = a.accept[q];
  std::size_t count = 0;
  while (true) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> refined(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<int> sig;
      sig.reserve(letters + 1);
      sig.push_back(cls[q]);
      for (std::size_t l = 0; l < letters; ++l) sig.push_back(cls[static_cast<std::size_t>(a.step(static_cast<int>(q), l))]);
      refined[q] = ids.emplace(std::move(sig), static_cast<int>(ids.size())).first->second;
    }
    const bool stable = ids.size() == count;
    count = ids.size();
    cls = std::move(refined);
    if (stable) break;
  }
  std::vector<int> rep(count, -1);
  for (std::size_t q = n; q-- > 0;) rep[static_cast<std::size_t>(cls[q])] = static_cast<int>(q);
  // Renumber classes in breadth-first order from the start state.
  return Explore<int>(
      a.vars, cls[0],
      [&](const int& c, std::size_t l) {
        return cls[static_cast<std::size_t>(a.step(rep[static_cast<std::size_t>(c)], l))];
      },
      [&](const int& c) { return a.accept[static_cast<std::size_t>(rep[static_cast<std::size_t>(c)])] != 0; });
}

Automaton Constant(bool value) {
  Automaton a;
  a.next = {0};
  a.accept = {static_cast<char>(value ? 1 : 0)};
  return a;
}

std::vector<Variable> VarsOf(const LinearTerm& t) {
  std::vector<Variable> out;
  for (const auto& [v, c] : t.coefficients()) {
    if (c != 0) out.push_back(v);
  }
  return out;
}

// Sum of the coefficients whose track bit is set in `letter`.
Integer LetterValue(const std::vector<Integer>& coefs, std::size_t letter) {
  Integer sum = 0;
  for (std::size_t i = 0; i < coefs.size(); ++i) {
    if ((letter >> i) & 1U) sum += coefs[i];
  }
  return sum;
}

Automaton AtomAutomaton(const Formula& f) {
  const LinearTerm& t = f.term();
  const std::vector<Variable> vars = VarsOf(t);
  std::vector<Integer> coefs;
  for (const Variable& v : vars) coefs.push_back(t.coefficient(v));
  switch (f.kind()) {
    case Kind::kLess: {
      // State s: remaining value plus s is >= 0.
      return Minimize(Explore<Integer>(
          vars, t.constant() - 1,
          [&](const Integer& s, std::size_t l) { return FloorDiv(s + LetterValue(coefs, l), 2); },
          [](const Integer& s) { return s >= 0; }));
    }
    case Kind::kEqual: {
      // State s: remaining value plus s is 0; nullopt is the dead state.
      using S = std::optional<Integer>;
      return Minimize(Explore<S>(
          vars, S(t.constant()),
          [&](const S& s, std::size_t l) -> S {
            if (!s) return s;
            const Integer v = *s + LetterValue(coefs, l);
            if (Mod(v, 2) != 0) return std::nullopt;
            return S(v / 2);
          },
          [](const S& s) { return s && *s == 0; }));
    }
    case Kind::kDivides: {
      // State (r, p): value so far mod m, and 2^position mod m.
      const Integer m = f.modulus();
      using S = std::pair<Integer, Integer>;
      return Minimize(Explore<S>(
          vars, S(Mod(t.constant(), m), Mod(Integer(1), m)),
          [&](const S& s, std::size_t l) {
            return S(Mod(s.first + s.second * LetterValue(coefs, l), m), Mod(s.second * 2, m));
          },
          [](const S& s) { return s.first == 0; }));
    }
    default:
      throw std::logic_error("not an atom");
  }
}

// Letter over `from` restricted to the tracks of `to` (to is a subset).
std::vector<std::size_t> LetterMap(const std::vector<Variable>& from, const std::vector<Variable>& to) {
  std::vector<std::size_t> pos;
  for (const Variable& v : to) pos.push_back(static_cast<std::size_t>(std::find(from.begin(), from.end(), v) - from.begin()));
  std::vector<std::size_t> out(std::size_t{1} << from.size());
  for (std::size_t l = 0; l < out.size(); ++l) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) r |= ((l >> pos[i]) & 1U) << i;
    out[l] = r;
  }
  return out;
}

Automaton Product(const Automaton& a, const Automaton& b, bool conjunction) {
  std::vector<Variable> vars;
  std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(), std::back_inserter(vars));
  const std::vector<std::size_t> ma = LetterMap(vars, a.vars);
  const std::vector<std::size_t> mb = LetterMap(vars, b.vars);
  using S = std::pair<int, int>;
  return Minimize(Explore<S>(
      vars, S(0, 0), [&](const S& s, std::size_t l) { return S(a.step(s.first, ma[l]), b.step(s.second, mb[l])); },
      [&](const S& s) {
        const bool x = a.accept[static_cast<std::size_t>(s.first)] != 0;
        const bool y = b.accept[static_cast<std::size_t>(s.second)] != 0;
        return conjunction ? (x && y) : (x || y);
      }));
}

Automaton Complement(Automaton a) {
  for (char& c : a.accept) c = static_cast<char>(c ? 0 : 1);
  return a;
}

Automaton Project(const Automaton& a, const Variable& v) {
  const auto it = std::find(a.vars.begin(), a.vars.end(), v);
  if (it == a.vars.end()) return a;
  const std::size_t j = static_cast<std::size_t>(it - a.vars.begin());
  std::vector<Variable> vars = a.vars;
  vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(j));
  auto widen = [j](std::size_t l, std::size_t bit) {
    const std::size_t low = l & ((std::size_t{1} << j) - 1);
    return low | (bit << j) | ((l >> j) << (j + 1));
  };
  // Saturate: accept wherever zeros on the kept tracks reach acceptance.
  std::vector<char> accept = a.accept;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t q = 0; q < a.states(); ++q) {
      if (accept[q]) continue;
      for (std::size_t bit = 0; bit < 2; ++bit) {
        if (accept[static_cast<std::size_t>(a.step(static_cast<int>(q), widen(0, bit)))]) {
          accept[q] = 1;
          changed = true;
          break;
        }
      }
    }
  }
  using S = std::vector<int>;
  return Minimize(Explore<S>(
      vars, S{0},
      [&](const S& s, std::size_t l) {
        S out;
        for (int q : s) {
          out.push_back(a.step(q, widen(l, 0)));
          out.push_back(a.step(q, widen(l, 1)));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
      },
      [&](const S& s) {
        return std::any_of(s.begin(), s.end(), [&](int q) { return accept[static_cast<std::size_t>(q)] != 0; });
      }));
}

}  // namespace

Automaton Compile(const Formula& f) {
  switch (f.kind()) {
    case Kind::kTrue:
      return Constant(true);
    case Kind::kFalse:
      return Constant(false);
    case Kind::kLess:
    case Kind::kEqual:
    case Kind::kDivides:
      return AtomAutomaton(f);
    case Kind::kNot:
      return Complement(Compile(f.body()));
    case Kind::kAnd:
    case Kind::kOr: {
      const bool conjunction = f.kind() == Kind::kAnd;
      Automaton acc = Constant(conjunction);
      for (const Formula& c : f.children()) acc = Product(acc, Compile(c), conjunction);
      return acc;
    }
    case Kind::kExists:
      return Project(Compile(f.body()), f.bound_variable());
    case Kind::kForall:
      return Complement(Project(Complement(Compile(f.body())), f.bound_variable()));
  }
  throw std::logic_error("unknown formula kind");
}

bool Accepts(const Automaton& a, const Assignment& values) {
  std::vector<Integer> v;
  std::size_t length = 0;
  for (const Variable& name : a.vars) {
    const auto it = values.find(name);
    if (it == values.end()) throw std::invalid_argument("no value for '" + name + "'");
    if (it->second < 0) throw std::invalid_argument("negative value for '" + name + "'");
    v.push_back(it->second);
    length = std::max(length, BitLength(it->second));
  }
  int q = 0;
  for (std::size_t pos = 0; pos < length; ++pos) {
    std::size_t letter = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (boost::multiprecision::bit_test(v[i], static_cast<unsigned>(pos))) letter |= std::size_t{1} << i;
    }
    q = a.step(q, letter);
  }
  return a.accept[static_cast<std::size_t>(q)] != 0;
}

Automaton Compile(const Formula& f, std::size_t max_states) {
  const std::size_t saved = state_budget;
  state_budget = max_states;
  struct Restore {
    std::size_t value;
    ~Restore() { state_budget = value; }
  } restore{saved};
  return Compile(f);
}

bool Equivalent(const Automaton& a, const Automaton& b) {
  // Same language iff no reachable pair of states disagrees on acceptance.
  std::vector<Variable> vars;
  std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(), std::back_inserter(vars));
  const std::vector<std::size_t> ma = LetterMap(vars, a.vars);
  const std::vector<std::size_t> mb = LetterMap(vars, b.vars);
  using S = std::pair<int, int>;
  const Automaton both = Explore<S>(
      vars, S(0, 0), [&](const S& s, std::size_t l) { return S(a.step(s.first, ma[l]), b.step(s.second, mb[l])); },
      [&](const S& s) {
        return a.accept[static_cast<std::size_t>(s.first)] == b.accept[static_cast<std::size_t>(s.second)];
      });
  return std::all_of(both.accept.begin(), both.accept.end(), [](char c) { return c != 0; });
}

bool Holds(const Formula& f, const Assignment& values) {
  std::map<Variable, LinearTerm> numerals;
  for (const Variable& v : f.free_vars()) {
    const auto it = values.find(v);
    if (it == values.end()) throw std::invalid_argument("no value for '" + v + "'");
    if (it->second < 0) throw std::invalid_argument("negative value for '" + v + "'");
    numerals.emplace(v, LinearTerm(it->second));
  }
  return HoldsSentence(Substitute(f, numerals));
}

bool HoldsSentence(const Formula& s) {
  if (!s.free_vars().empty()) throw std::invalid_argument("not a sentence: " + s.str());
  switch (s.kind()) {
    case Kind::kNot:
      return !HoldsSentence(s.body());
    case Kind::kAnd:
      return std::all_of(s.children().begin(), s.children().end(), [](const Formula& c) { return HoldsSentence(c); });
    case Kind::kOr:
      return std::any_of(s.children().begin(), s.children().end(), [](const Formula& c) { return HoldsSentence(c); });
    case Kind::kExists:
    case Kind::kForall: {
      // A reachable accepting (rejecting) state of the matrix automaton
      // witnesses the outer block.
      const Kind kind = s.kind();
      Formula body = s;
      while (body.kind() == kind) body = body.body();
      const Automaton a = Compile(body);
      const char wanted = kind == Kind::kExists ? 1 : 0;
      const bool found = std::find(a.accept.begin(), a.accept.end(), wanted) != a.accept.end();
      return kind == Kind::kExists ? found : !found;
    }
    default:
      return Accepts(Compile(s), {});
  }
}

}  // namespace upw::oracle
