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


// One line per acceptance criterion: [PASS] or [FAIL], the evidence, and the
// elapsed time against its limit. Exit status is nonzero if any line fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "automaton.hpp"
#include "generic_point.hpp"
#include "upw/applications.hpp"
#include "upw/evaluate.hpp"
#include "upw/qe.hpp"
#include "upw/random.hpp"
#include "upw/suites.hpp"
#include "upw/ultrafilter.hpp"
#include "upw/ultrapower.hpp"

namespace upw {
namespace {

struct Evidence {
  bool ok = true;
  std::vector<std::string> parts;

  void Add(bool passed, const std::string& text) {
    ok = ok && passed;
    parts.push_back(text);
  }
};

const UltrapowerModel& Model() {
  static const UltrapowerModel model(BuiltinInfinityUltrafilter());
  return model;
}

void FullSuite(Evidence& e, const std::string& name) {
  const SuiteSpec& spec = FindSuite(name);
  SuiteContext ctx;
  ctx.model = &Model();
  ctx.seed = SuiteSeed(42, name);
  ctx.count = spec.full_count;
  SuiteResult r;
  try {
    r = spec.run(ctx);
  } catch (const std::exception& ex) {
    e.Add(false, name + " threw: " + ex.what());
    return;
  }
  std::string text = name + " " + std::to_string(r.passed) + "/" + std::to_string(r.total);
  if (!r.failures.empty()) text += " (" + r.failures.front() + ")";
  e.Add(r.ok() && r.total > 0, text);
}

std::string Count(const char* what, std::size_t agree, std::size_t total) {
  return std::string(what) + " " + std::to_string(agree) + "/" + std::to_string(total);
}

// Eliminate against the automaton on formulas with unguarded quantifiers.
void UnguardedQe(Evidence& e, std::size_t count) {
  Rng rng(1001);
  FormulaShape shape;
  shape.quantifier_blocks = 3;
  std::size_t agree = 0;
  std::size_t by_language = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const Formula f = RandomFormula(rng, shape);
    const Formula q = Eliminate(f);
    bool same = q.is_quantifier_free();
    try {
      same = same && oracle::Equivalent(oracle::Compile(f, 20000), oracle::Compile(q, 20000));
      ++by_language;
    } catch (const oracle::BudgetExceeded&) {
      for (int a = 0; a <= 8 && same; ++a) {
        for (int b = 0; b <= 8 && same; ++b) {
          const Assignment as{{"a", a}, {"b", b}};
          same = oracle::Holds(f, as) == Evaluate(q, as);
        }
      }
    }
    agree += same;
  }
  e.Add(agree == count, Count("unguarded vs automaton", agree, count) + " (" + std::to_string(by_language) +
                            " by full language equality)");
}

std::vector<Variable> Coordinates(std::size_t n) {
  std::vector<Variable> vars;
  for (std::size_t i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
  return vars;
}

void GenericMembership(Evidence& e, std::size_t per_dimension) {
  const UltrafilterOracle& u = Model().oracle();
  Rng rng(1002);
  for (std::size_t n = 1; n <= 3; ++n) {
    FormulaShape shape;
    shape.free_vars = Coordinates(n);
    std::size_t agree = 0;
    for (std::size_t k = 0; k < per_dimension; ++k) {
      const Formula phi = RandomFormula(rng, shape);
      agree += MemberN(u, IndexedSetFormula(phi, Coordinates(n))) == oracle::GenericMember(phi, Coordinates(n));
    }
    e.Add(agree == per_dimension, Count(("generic point n=" + std::to_string(n)).c_str(), agree, per_dimension));
  }
}

void GenericTransform(Evidence& e, std::size_t count) {
  const UltrafilterOracle& u = Model().oracle();
  Rng rng(1003);
  FormulaShape shape;
  shape.free_vars = {"x", "y"};
  std::size_t agree = 0;
  std::size_t total = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const Formula phi = RandomFormula(rng, shape);
    const Formula t = u.transform(phi, "x");
    for (int y = 0; y <= 20; ++y) {
      ++total;
      agree += Evaluate(t, {{"y", y}}) == oracle::GenericMember(phi, {"x"}, {{"y", y}});
    }
  }
  e.Add(agree == total, Count("transform vs generic point", agree, total));
}

void GenericGenerators(Evidence& e, std::size_t count) {
  Rng rng(1004);
  std::size_t agree = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t arity = static_cast<std::size_t>(rng.uniform(1, 3));
    FormulaShape shape;
    shape.free_vars = Coordinates(arity);
    const Formula phi = RandomFormula(rng, shape);
    std::vector<GeneralizedTerm> args;
    for (const IndexLabel& l : RandomLabels(rng, arity, -6, 6, 3)) args.push_back(GeneralizedTerm::Generator(l));
    agree += Model().Eval(phi, Coordinates(arity), args) == oracle::GenericMember(phi, Coordinates(arity));
  }
  e.Add(agree == count, Count("generators vs generic point", agree, count));
}

void FixedMapSeparation(Evidence& e) {
  const std::array<OrderAutomorphism, 3> maps = {OrderAutomorphism::Translation(1),
                                                 OrderAutomorphism::Parse("pl:0;1,1;2,1"),
                                                 OrderAutomorphism::Parse("pl:0;1,-1;1/2,-1")};
  Rng rng(1005);
  std::size_t agree = 0;
  std::size_t total = 0;
  for (const OrderAutomorphism& alpha : maps) {
    for (int k = 0; k < 50; ++k) {
      const std::vector<IndexLabel> drawn = RandomLabels(rng, static_cast<std::size_t>(rng.uniform(1, 4)), -5, 5, 2);
      const std::set<IndexLabel> labels(drawn.begin(), drawn.end());
      const unsigned m = SeparatingPower(alpha, labels);
      bool minimal = true;
      for (unsigned j = 1; j <= m; ++j) {
        const OrderAutomorphism aj = alpha.power(j);
        bool disjoint = true;
        for (const IndexLabel& i : labels) disjoint = disjoint && !labels.count(aj(i));
        minimal = minimal && disjoint == (j == m);
      }
      ++total;
      agree += minimal;
    }
  }
  e.Add(agree == total, Count("separating power on the three maps", agree, total));
}

void Demo(Evidence& e, const DemoReport& r) {
  e.Add(r.passed(), r.name + " checks " + std::to_string(r.checks) + ", violations " + std::to_string(r.violations));
}

std::string Capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buffer;
  while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe)) out.append(buffer.data(), n);
  status = pclose(pipe);
  return out;
}

void Determinism(Evidence& e, const std::string& binary) {
  const std::string command = "'" + binary + "' suite --seed 42";
  int first_status = 0;
  int second_status = 0;
  const std::string first = Capture(command, first_status);
  const std::string second = Capture(command, second_status);
  e.Add(first_status == 0 && second_status == 0, "exit statuses " + std::to_string(first_status) + ", " +
                                                     std::to_string(second_status));
  e.Add(!first.empty() && first == second, std::to_string(first.size()) + " bytes, " +
                                               (first == second ? "identical" : "different"));
}

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<void(Evidence&)> run;
};

}  // namespace
}  // namespace upw

int main(int argc, char** argv) {
  using namespace upw;
  std::string binary = argc > 1 ? argv[1] : UPW_BINARY;
  const std::vector<Criterion> criteria = {
      {1, "QE differential", 120,
       [](Evidence& e) {
         FullSuite(e, "qe.differential");
         UnguardedQe(e, 300);
       }},
      {2, "ultrafilter axioms", 60,
       [](Evidence& e) {
         FullSuite(e, "ultrafilter.axioms");
         FullSuite(e, "ultrafilter.nonprincipal");
         GenericMembership(e, 200);
       }},
      {3, "amenability", 60,
       [](Evidence& e) {
         FullSuite(e, "ultrafilter.amenability");
         GenericTransform(e, 100);
       }},
      {4, "splitting and padding", 60,
       [](Evidence& e) {
         FullSuite(e, "ultrafilter.splitting");
         FullSuite(e, "ultrafilter.padding");
       }},
      {5, "Los and elementarity", 60,
       [](Evidence& e) {
         FullSuite(e, "ultrapower.elementarity");
         FullSuite(e, "ultrapower.los");
       }},
      {6, "indiscernibility", 120,
       [](Evidence& e) {
         FullSuite(e, "ultrapower.indiscernibility");
         GenericGenerators(e, 100);
       }},
      {7, "tightness", 120,
       [](Evidence& e) {
         FullSuite(e, "ultrapower.tightness");
         FullSuite(e, "ultrapower.disjoint");
       }},
      {8, "automorphisms", 120,
       [](Evidence& e) {
         FullSuite(e, "applications.classify");
         FullSuite(e, "applications.group-laws");
         FullSuite(e, "applications.atomic");
         FullSuite(e, "applications.iterates");
         FullSuite(e, "applications.separation");
         FixedMapSeparation(e);
       }},
      {9, "chain and lattice demos", 120,
       [](Evidence& e) {
         Demo(e, RunChainDemo(Model(), 4, 25, 42));
         Demo(e, RunLatticeDemo(Model(), {0, 1}, {2, 3}, 25, 42));
       }},
      {10, "determinism", 600, [&binary](Evidence& e) { Determinism(e, binary); }},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    Evidence e;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(e);
    } catch (const std::exception& ex) {
      e.Add(false, std::string("exception: ") + ex.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.limit_seconds;
    const bool ok = e.ok && in_time;
    all = all && ok;
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << (ok ? "[PASS] " : "[FAIL] ") << c.number << ". " << c.title << ": ";
    for (std::size_t i = 0; i < e.parts.size(); ++i) line << (i ? "; " : "") << e.parts[i];
    line << "; " << seconds << " s (limit " << c.limit_seconds << " s)";
    std::cout << line.str() << std::endl;
  }
  return all ? 0 : 1;
}
