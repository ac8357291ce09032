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


#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "upw/applications.hpp"
#include "upw/automorphism.hpp"
#include "upw/error.hpp"
#include "upw/evaluate.hpp"
#include "upw/literal.hpp"
#include "upw/parser.hpp"
#include "upw/qe.hpp"
#include "upw/suites.hpp"
#include "upw/ultrafilter.hpp"
#include "upw/ultrapower.hpp"

namespace upw::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kMaxScriptDepth = 8;
thread_local int script_depth = 0;

struct Globals {
  std::uint64_t seed = 42;
  std::string bound = "100";
  std::size_t max_bits = QeOptions{}.max_bits;
  std::string format = "json";
  bool timing = false;
};

struct Args {
  std::string formula;
  std::string var;
  std::string term;
  std::string assign;
  std::string vars;
  std::string values;
  std::string inputs;
  std::string output = "z";
  std::string at;
  std::string number;
  std::string alpha;
  std::string labels;
  std::string from;
  std::string s0 = "0,1";
  std::string s1 = "2,3";
  std::string level = "quick";
  std::string file;
  std::string left;
  std::string right;
  std::vector<std::string> call_args;
  std::vector<std::string> only;
  int depth = 4;
  int samples = 25;
  bool los = false;
  bool witness_formula = false;
};

struct Record {
  Json input = Json::object();
  Json result;
  Json witness;
  bool failed = false;
  bool silent = false;  // already emitted its own records
  int code = kOk;
};

struct Context {
  const Globals& globals;
  QeOptions options;
  UltrapowerModel model;
  std::ostream& out;
};

using Handler = std::function<Record(const Args&, Context&)>;

struct Command {
  std::string name;
  std::string description;
  std::function<void(CLI::App&, Args&)> setup;
  Handler run;
};

std::string OneLine(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

void Emit(std::ostream& out, const Globals& g, const Json& record) {
  if (g.format == "json") {
    out << record.dump() << '\n';
    return;
  }
  auto text = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (record.contains("error")) {
    out << record["cmd"].get<std::string>() << ": error " << record["error"]["kind"].get<std::string>() << ": "
        << record["error"]["reason"].get<std::string>() << '\n';
    return;
  }
  out << record["cmd"].get<std::string>() << ": " << text(record["result"]) << '\n';
  if (record.contains("witness")) {
    const Json& w = record["witness"];
    if (w.is_object()) {
      for (const auto& [k, v] : w.items()) out << "  " << k << ": " << text(v) << '\n';
    } else if (w.is_array()) {
      for (const Json& v : w) out << "  " << text(v) << '\n';
    } else {
      out << "  witness: " << text(w) << '\n';
    }
  }
  if (record.contains("elapsed_ms")) out << "  elapsed_ms: " << record["elapsed_ms"].dump() << '\n';
}

void EmitError(std::ostream& out, const Globals& g, const std::string& cmd, const Json& input,
               const std::string& kind, const std::string& reason) {
  Json r;
  r["cmd"] = cmd;
  r["input"] = input;
  r["error"] = {{"kind", kind}, {"reason", OneLine(reason)}};
  Emit(out, g, r);
}

Json Labels(const std::set<IndexLabel>& labels) {
  Json out = Json::array();
  for (const IndexLabel& i : labels) out.push_back(i.str());
  return out;
}

Json Report(const DemoReport& report) {
  Json w;
  w["checks"] = report.checks;
  w["violations"] = report.violations;
  w["witnesses"] = report.witnesses;
  if (!report.failures.empty()) w["failures"] = report.failures;
  return w;
}

Integer ParseNatural(const std::string& text, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(what + " must be a natural number, got '" + text + "'", 1, 1);
  }
  return Integer(text);
}

std::vector<Variable> DefaultVars(std::size_t n) {
  std::vector<Variable> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

std::set<IndexLabel> LabelSet(const std::string& text) {
  const std::vector<IndexLabel> list = ParseLabelList(text);
  std::set<IndexLabel> out(list.begin(), list.end());
  if (out.size() != list.size()) throw DomainError("repeated label in '" + text + "'");
  return out;
}

int RunScript(const std::string& path, const Globals& g, std::ostream& out);

const std::vector<Command>& Commands() {
  static const std::vector<Command> commands = {
      {"parse", "parse a formula and print its canonical form",
       [](CLI::App& c, Args& a) { c.add_option("formula", a.formula)->required(); },
       [](const Args& a, Context&) {
         Record r;
         r.input["formula"] = a.formula;
         const Formula f = Parse(a.formula);
         r.result = Render(f);
         r.witness["free_vars"] = f.free_vars();
         return r;
       }},
      {"evaluate", "evaluate a formula under an assignment, quantifiers bounded by --bound",
       [](CLI::App& c, Args& a) {
         c.add_option("formula", a.formula)->required();
         c.add_option("--assign", a.assign, "x=3,y=6");
       },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["formula"] = a.formula;
         r.input["assign"] = a.assign;
         r.input["bound"] = ctx.globals.bound;
         r.result = Evaluate(Parse(a.formula), ParseAssignment(a.assign), ParseNatural(ctx.globals.bound, "bound"));
         return r;
       }},
      {"subst", "capture-avoiding substitution of a term for a free variable",
       [](CLI::App& c, Args& a) {
         c.add_option("formula", a.formula)->required();
         c.add_option("--var", a.var)->required();
         c.add_option("--term", a.term)->required();
       },
       [](const Args& a, Context&) {
         Record r;
         r.input["formula"] = a.formula;
         r.input["var"] = a.var;
         r.input["term"] = a.term;
         r.result = Render(Substitute(Parse(a.formula), a.var, ParseTerm(a.term)));
         return r;
       }},
      {"qe", "eliminate quantifiers",
       [](CLI::App& c, Args& a) { c.add_option("formula", a.formula)->required(); },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["formula"] = a.formula;
         r.result = Render(Eliminate(Parse(a.formula), ctx.options));
         return r;
       }},
      {"decide", "decide a sentence",
       [](CLI::App& c, Args& a) { c.add_option("sentence", a.formula)->required(); },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["sentence"] = a.formula;
         r.result = Decide(Parse(a.formula), ctx.options);
         return r;
       }},
      {"xnf", "normal form isolating one variable",
       [](CLI::App& c, Args& a) {
         c.add_option("formula", a.formula)->required();
         c.add_option("--var", a.var)->required();
       },
       [](const Args& a, Context&) {
         Record r;
         r.input["formula"] = a.formula;
         r.input["var"] = a.var;
         const XNormalForm n = ToXNormalForm(Parse(a.formula), a.var);
         r.result = Render(n.to_formula());
         Json moduli = Json::array();
         for (const Integer& m : n.moduli) moduli.push_back(ToString(m));
         r.witness["scale"] = ToString(n.scale);
         r.witness["disjuncts"] = n.disjuncts.size();
         r.witness["moduli"] = moduli;
         r.witness["lcm"] = ToString(n.modulus_lcm());
         return r;
       }},
      {"transform", "ultrafilter transform U_phi of the built-in ultrafilter",
       [](CLI::App& c, Args& a) {
         c.add_option("formula", a.formula)->required();
         c.add_option("--var", a.var)->required();
         c.add_flag("--witness-formula", a.witness_formula, "also print the defining witness formula");
       },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["formula"] = a.formula;
         r.input["var"] = a.var;
         const Formula phi = Parse(a.formula);
         r.result = Render(ctx.model.oracle().transform(phi, a.var));
         r.witness["ultrafilter"] = ctx.model.oracle().name();
         if (a.witness_formula) r.witness["witness_formula"] = Render(WitnessFormula(phi, a.var, ctx.options));
         return r;
       }},
      {"umember", "membership of a definable set in U^n",
       [](CLI::App& c, Args& a) {
         c.add_option("formula", a.formula)->required();
         c.add_option("--vars", a.vars, "x1,x2,..")->required();
       },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["formula"] = a.formula;
         r.input["vars"] = a.vars;
         const IndexedSetFormula x(Parse(a.formula), SplitList(a.vars));
         r.result = MemberN(ctx.model.oracle(), x);
         r.witness["folded"] = Render(FoldTransforms(ctx.model.oracle(), x));
         return r;
       }},
      {"section", "fiber of a definable set over a prefix of its coordinates",
       [](CLI::App& c, Args& a) {
         c.add_option("formula", a.formula)->required();
         c.add_option("--vars", a.vars, "x1,x2,..")->required();
         c.add_option("--values", a.values, "values for a prefix of the vars");
       },
       [](const Args& a, Context&) {
         Record r;
         r.input["formula"] = a.formula;
         r.input["vars"] = a.vars;
         r.input["values"] = a.values;
         std::vector<Integer> prefix;
         for (const std::string& v : SplitList(a.values)) prefix.push_back(ParseNatural(v, "section value"));
         const IndexedSetFormula s = Section(IndexedSetFormula(Parse(a.formula), SplitList(a.vars)), prefix);
         r.result = Render(s.formula());
         r.witness["vars"] = s.vars();
         return r;
       }},
      {"mkterm", "build a certified generalized term from a graph",
       [](CLI::App& c, Args& a) {
         c.add_option("graph", a.formula)->required();
         c.add_option("--inputs", a.inputs, "x1,..,xk");
         c.add_option("--output", a.output, "output variable");
         c.add_option("--at", a.at, "increasing labels q1,..,qk");
       },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["graph"] = a.formula;
         r.input["inputs"] = a.inputs;
         r.input["output"] = a.output;
         r.input["at"] = a.at;
         r.result = GeneralizedTerm::Make(Parse(a.formula), SplitList(a.inputs), a.output, ParseLabelList(a.at),
                                          ctx.options)
                        .str();
         return r;
       }},
      {"embed", "the standard element for a natural number",
       [](CLI::App& c, Args& a) { c.add_option("n", a.number)->required(); },
       [](const Args& a, Context&) {
         Record r;
         r.input["n"] = a.number;
         r.result = Embed(ParseNatural(a.number, "n")).str();
         return r;
       }},
      {"eq", "equality of two ultrapower elements",
       [](CLI::App& c, Args& a) {
         c.add_option("s", a.left)->required();
         c.add_option("t", a.right)->required();
       },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["s"] = a.left;
         r.input["t"] = a.right;
         r.result = ctx.model.Eq(ParseTermLiteral(a.left, ctx.options), ParseTermLiteral(a.right, ctx.options));
         return r;
       }},
      {"eval", "truth of a formula at ultrapower elements",
       [](CLI::App& c, Args& a) {
         c.add_option("formula", a.formula)->required();
         c.add_option("--args", a.call_args, "term literals, bound to v1,v2,.. in order")->allow_extra_args(false)->take_all();
         c.add_option("--vars", a.vars, "names for the arguments instead of v1,v2,..");
         c.add_flag("--los", a.los, "evaluate by recursion with Skolem witnesses");
       },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["formula"] = a.formula;
         r.input["args"] = a.call_args;
         if (!a.vars.empty()) r.input["vars"] = a.vars;
         std::vector<GeneralizedTerm> terms;
         for (const std::string& text : a.call_args) {
           for (GeneralizedTerm& t : ParseTermLiterals(text, ctx.options)) terms.push_back(std::move(t));
         }
         const std::vector<Variable> vars = a.vars.empty() ? DefaultVars(terms.size()) : SplitList(a.vars);
         const Formula phi = Parse(a.formula);
         r.result = a.los ? ctx.model.EvalLos(phi, vars, terms) : ctx.model.Eval(phi, vars, terms);
         return r;
       }},
      {"standard", "whether an element is standard, with its value",
       [](CLI::App& c, Args& a) { c.add_option("t", a.left)->required(); },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["t"] = a.left;
         const StandardResult s = ctx.model.IsStandard(ParseTermLiteral(a.left, ctx.options));
         r.result = s.standard;
         if (s.value) r.witness["value"] = ToString(*s.value);
         return r;
       }},
      {"support", "labels an element essentially depends on",
       [](CLI::App& c, Args& a) { c.add_option("t", a.left)->required(); },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["t"] = a.left;
         const GeneralizedTerm t = ParseTermLiteral(a.left, ctx.options);
         r.result = Labels(ctx.model.Support(t));
         r.witness["restricted"] = ctx.model.RestrictToSupport(t).str();
         return r;
       }},
      {"lift", "apply the automorphism induced by an order automorphism",
       [](CLI::App& c, Args& a) {
         c.add_option("alpha", a.alpha)->required();
         c.add_option("t", a.left)->required();
       },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["alpha"] = a.alpha;
         r.input["t"] = a.left;
         r.result = Lift(OrderAutomorphism::Parse(a.alpha), ParseTermLiteral(a.left, ctx.options)).str();
         return r;
       }},
      {"classify", "fixed or moved by the lifted automorphism, with standardness",
       [](CLI::App& c, Args& a) {
         c.add_option("alpha", a.alpha)->required();
         c.add_option("t", a.left)->required();
       },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["alpha"] = a.alpha;
         r.input["t"] = a.left;
         const Classification c =
             Classify(ctx.model, OrderAutomorphism::Parse(a.alpha), ParseTermLiteral(a.left, ctx.options));
         r.result = c.fixed ? "fixed" : "moved";
         r.witness["standard"] = c.standard.standard;
         if (c.standard.value) r.witness["value"] = ToString(*c.standard.value);
         return r;
       }},
      {"seppow", "least m with alpha^m(I) disjoint from I",
       [](CLI::App& c, Args& a) {
         c.add_option("alpha", a.alpha)->required();
         c.add_option("labels", a.labels)->required();
       },
       [](const Args& a, Context&) {
         Record r;
         r.input["alpha"] = a.alpha;
         r.input["labels"] = a.labels;
         r.result = SeparatingPower(OrderAutomorphism::Parse(a.alpha), LabelSet(a.labels));
         return r;
       }},
      {"insub", "membership in a generated submodel",
       [](CLI::App& c, Args& a) {
         c.add_option("t", a.left)->required();
         auto* labels = c.add_option("--labels", a.labels, "finite generating labels");
         auto* from = c.add_option("--from", a.from, "all labels >= q");
         labels->excludes(from);
         from->excludes(labels);
       },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["t"] = a.left;
         const bool upward = !a.from.empty();
         const GeneratedSubmodel s = upward ? GeneratedSubmodel::AtLeast(IndexLabel::Parse(a.from))
                                            : GeneratedSubmodel::Finite(LabelSet(a.labels));
         r.input["submodel"] = s.str();
         r.result = InSubmodel(ctx.model, ParseTermLiteral(a.left, ctx.options), s);
         return r;
       }},
      {"chain", "strictly decreasing chain of elementary submodels",
       [](CLI::App& c, Args& a) {
         c.add_option("--depth", a.depth)->capture_default_str();
         c.add_option("--samples", a.samples)->capture_default_str();
       },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["depth"] = a.depth;
         r.input["samples"] = a.samples;
         r.input["seed"] = ctx.globals.seed;
         const DemoReport report = RunChainDemo(ctx.model, a.depth, a.samples, ctx.globals.seed);
         r.result = report.passed() ? "pass" : "fail";
         r.witness = Report(report);
         r.failed = !report.passed();
         return r;
       }},
      {"lattice", "submodels generated by disjoint label sets meet in the standard part",
       [](CLI::App& c, Args& a) {
         c.add_option("--s0", a.s0)->capture_default_str();
         c.add_option("--s1", a.s1)->capture_default_str();
         c.add_option("--samples", a.samples)->capture_default_str();
       },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["s0"] = a.s0;
         r.input["s1"] = a.s1;
         r.input["samples"] = a.samples;
         r.input["seed"] = ctx.globals.seed;
         const DemoReport report =
             RunLatticeDemo(ctx.model, LabelSet(a.s0), LabelSet(a.s1), a.samples, ctx.globals.seed);
         r.result = report.passed() ? "pass" : "fail";
         r.witness = Report(report);
         r.failed = !report.passed();
         return r;
       }},
      {"suite", "run the property suites",
       [](CLI::App& c, Args& a) {
         c.add_option("--level", a.level)->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
         c.add_option("--only", a.only, "suite names to run (default all)")->allow_extra_args(false)->take_all();
       },
       [](const Args& a, Context& ctx) {
         Record r;
         r.input["level"] = a.level;
         r.input["seed"] = ctx.globals.seed;
         if (!a.only.empty()) r.input["only"] = a.only;
         std::vector<const SuiteSpec*> chosen;
         if (a.only.empty()) {
           for (const SuiteSpec& s : AllSuites()) chosen.push_back(&s);
         } else {
           for (const std::string& name : a.only) chosen.push_back(&FindSuite(name));
         }
         r.witness = Json::array();
         std::size_t passed = 0;
         for (const SuiteSpec* s : chosen) {
           const auto start = std::chrono::steady_clock::now();
           const SuiteContext sc{&ctx.model, SuiteSeed(ctx.globals.seed, s->name),
                                 a.level == "full" ? s->full_count : s->quick_count};
           const SuiteResult res = s->run(sc);
           Json entry;
           entry["suite"] = s->name;
           entry["passed"] = res.passed;
           entry["total"] = res.total;
           if (!res.failures.empty()) entry["failures"] = res.failures;
           if (ctx.globals.timing) {
             entry["elapsed_ms"] =
                 std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
           }
           r.witness.push_back(entry);
           if (res.ok()) ++passed;
         }
         r.failed = passed != chosen.size();
         r.result = r.failed ? "fail" : "pass";
         return r;
       }},
      {"ops", "list every library operation and its subcommand",
       [](CLI::App&, Args&) {},
       [](const Args&, Context&) {
         Record r;
         r.result = Json::array();
         for (const OperationEntry& e : Operations()) {
           r.result.push_back({{"module", e.module}, {"op", e.operation}, {"subcommand", e.subcommand}});
         }
         return r;
       }},
      {"script", "run commands from a file, one per line",
       [](CLI::App& c, Args& a) { c.add_option("file", a.file)->required(); },
       [](const Args& a, Context& ctx) {
         Record r;
         r.silent = true;
         r.code = RunScript(a.file, ctx.globals, ctx.out);
         return r;
       }},
  };
  return commands;
}

std::string Expand(const std::string& word, const std::map<std::string, std::string>& bindings,
                   std::size_t line) {
  std::string out;
  for (std::size_t i = 0; i < word.size();) {
    if (word[i] != '$') {
      out += word[i++];
      continue;
    }
    std::size_t j = i + 1;
    const bool braced = j < word.size() && word[j] == '{';
    if (braced) ++j;
    const std::size_t start = j;
    while (j < word.size() && (std::isalnum(static_cast<unsigned char>(word[j])) || word[j] == '_')) ++j;
    const std::string name = word.substr(start, j - start);
    if (braced) {
      if (j >= word.size() || word[j] != '}') throw ParseError("unterminated '${'", line, i + 1);
      ++j;
    }
    if (name.empty()) throw ParseError("expected a name after '$'", line, i + 1);
    const auto it = bindings.find(name);
    if (it == bindings.end()) throw ParseError("unbound name '" + name + "'", line, i + 1);
    out += it->second;
    i = j;
  }
  return out;
}

std::vector<std::string> GlobalArgs(const Globals& g) {
  std::vector<std::string> out = {"--seed", std::to_string(g.seed), "--bound", g.bound,
                                  "--max-bits", std::to_string(g.max_bits), "--format", g.format};
  if (g.timing) out.push_back("--timing");
  return out;
}

int RunScript(const std::string& path, const Globals& g, std::ostream& out) {
  if (script_depth >= kMaxScriptDepth) throw DomainError("scripts nested too deeply");
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read script '" + path + "'");
  std::map<std::string, std::string> bindings;
  std::string line;
  std::size_t number = 0;
  int code = kOk;
  ++script_depth;
  struct Restore {
    ~Restore() { --script_depth; }
  } restore;
  while (std::getline(in, line)) {
    ++number;
    std::vector<std::string> words;
    try {
      words = SplitWords(line);
      for (std::string& w : words) w = Expand(w, bindings, number);
    } catch (const std::exception& e) {
      EmitError(out, g, "script", Json{{"file", path}, {"line", number}}, "parse", e.what());
      code = std::max(code, static_cast<int>(kUsage));
      continue;
    }
    if (words.empty()) continue;
    if (words.front() == "upw") words.erase(words.begin());
    if (!words.empty() && words.front() == "let") {
      if (words.size() != 4 || words[2] != "=" || words[1].empty() ||
          words[1].find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_") !=
              std::string::npos) {
        EmitError(out, g, "script", Json{{"file", path}, {"line", number}}, "parse",
                  "expected: let NAME = VALUE");
        code = std::max(code, static_cast<int>(kUsage));
        continue;
      }
      bindings[words[1]] = words[3];
      continue;
    }
    std::vector<std::string> args = GlobalArgs(g);
    args.insert(args.end(), words.begin(), words.end());
    code = std::max(code, Run(args, out, g.seed));
  }
  return code;
}

}  // namespace

const std::vector<OperationEntry>& Operations() {
  static const std::vector<OperationEntry> table = {
      {"logic-kernel", "parse", "parse"},
      {"logic-kernel", "evaluate", "evaluate"},
      {"logic-kernel", "substitute", "subst"},
      {"qe", "eliminate", "qe"},
      {"qe", "decide", "decide"},
      {"qe", "x_normal_form", "xnf"},
      {"ultrafilter", "builtin_infinity_ultrafilter", "transform"},
      {"ultrafilter", "transform", "transform"},
      {"ultrafilter", "member_n", "umember"},
      {"ultrafilter", "section", "section"},
      {"ultrapower", "mk_term", "mkterm"},
      {"ultrapower", "eq", "eq"},
      {"ultrapower", "eval", "eval"},
      {"ultrapower", "embed", "embed"},
      {"ultrapower", "is_standard", "standard"},
      {"ultrapower", "support", "support"},
      {"applications", "lift", "lift"},
      {"applications", "separating_power", "seppow"},
      {"applications", "classify", "classify"},
      {"applications", "in_submodel", "insub"},
      {"applications", "run_chain_demo", "chain"},
      {"applications", "run_lattice_demo", "lattice"},
      {"cli", "suites", "suite"},
      {"cli", "operations", "ops"},
      {"cli", "script", "script"},
  };
  return table;
}

std::vector<std::string> Subcommands() {
  std::vector<std::string> out;
  for (const Command& c : Commands()) out.push_back(c.name);
  return out;
}

std::vector<std::string> SplitWords(const std::string& line) {
  std::vector<std::string> words;
  std::string current;
  bool in_word = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '"') {
      in_word = true;
      for (++i;; ++i) {
        if (i >= line.size()) throw std::invalid_argument("unterminated double quote");
        if (line[i] == '"') break;
        if (line[i] == '\\' && i + 1 < line.size() && (line[i + 1] == '"' || line[i + 1] == '\\')) ++i;
        current += line[i];
      }
    } else if (c == '\'') {
      in_word = true;
      const std::size_t end = line.find('\'', i + 1);
      if (end == std::string::npos) throw std::invalid_argument("unterminated single quote");
      current += line.substr(i + 1, end - i - 1);
      i = end;
    } else if (c == '#' && !in_word) {
      break;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_word) words.push_back(std::move(current));
      current.clear();
      in_word = false;
    } else {
      current += c;
      in_word = true;
    }
  }
  if (in_word) words.push_back(std::move(current));
  return words;
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::uint64_t default_seed) {
  Globals g;
  g.seed = default_seed;
  Args a;
  CLI::App app{"upw: nonstandard models of Presburger arithmetic via iterated ultrapowers", "upw"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "random seed (default UPW_SEED or 42)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--bound", g.bound, "quantifier bound for evaluate")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)
      ->capture_default_str();
  app.add_option("--max-bits", g.max_bits, "ceiling on integer size during elimination")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)
      ->capture_default_str();
  app.add_option("--format", g.format)
      ->check(CLI::IsMember({"json", "plain"}))
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)
      ->capture_default_str();
  app.add_flag("--timing", g.timing, "add elapsed_ms to records");
  for (const Command& c : Commands()) {
    CLI::App* sub = app.add_subcommand(c.name, c.description);
    c.setup(*sub, a);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, out);
      return kOk;
    }
    EmitError(out, g, "upw", Json(args), "usage", e.what());
    return kUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const auto command = std::find_if(Commands().begin(), Commands().end(),
                                    [&](const Command& c) { return c.name == name; });
  QeOptions options;
  options.max_bits = g.max_bits;
  Context ctx{g, options, UltrapowerModel(BuiltinInfinityUltrafilter(options)), out};
  const auto start = std::chrono::steady_clock::now();
  Json input = Json(std::vector<std::string>(args));
  try {
    Record r = command->run(a, ctx);
    if (r.silent) return r.code;
    Json record;
    record["cmd"] = name;
    record["input"] = r.input;
    record["result"] = r.result;
    if (!r.witness.is_null()) record["witness"] = r.witness;
    if (g.timing) {
      record["elapsed_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    Emit(out, g, record);
    return r.failed ? kFailed : kOk;
  } catch (const ParseError& e) {
    EmitError(out, g, name, input, "parse", e.what());
    return kUsage;
  } catch (const DomainError& e) {
    EmitError(out, g, name, input, "domain", e.what());
    return kUsage;
  } catch (const ResourceLimitError& e) {
    EmitError(out, g, name, input, "resource", e.what());
    return kResource;
  } catch (const InvariantViolation& e) {
    EmitError(out, g, name, input, "invariant", e.what());
    return kFailed;
  } catch (const std::invalid_argument& e) {
    EmitError(out, g, name, input, "usage", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    EmitError(out, g, name, input, "internal", e.what());
    return kFailed;
  }
}

}  // namespace upw::cli
