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

#include "upw/applications.hpp"

#include <algorithm>
#include <iterator>

#include "upw/error.hpp"
#include "upw/random.hpp"

namespace upw {
namespace {

constexpr unsigned kMaxSeparatingPower = 1u << 20;

void RequireFixedPointFree(const OrderAutomorphism& alpha) {
  if (const auto p = alpha.fixed_point()) {
    throw DomainError("automorphism " + alpha.str() + " fixes " + ToString(*p));
  }
}

std::string Describe(const std::set<IndexLabel>& labels) {
  std::string out = "{";
  for (const IndexLabel& i : labels) out += (out.size() > 1 ? "," : "") + i.str();
  return out + "}";
}

// A random nonempty increasing subsequence of `labels`.
std::vector<IndexLabel> RandomSubset(Rng& rng, const std::set<IndexLabel>& labels, std::size_t max_size) {
  std::vector<IndexLabel> pool(labels.begin(), labels.end());
  std::vector<IndexLabel> out;
  while (out.empty()) {
    for (const IndexLabel& i : pool) {
      if (out.size() < max_size && rng.chance(0.5)) out.push_back(i);
    }
  }
  return out;
}

bool SupportWithin(const std::set<IndexLabel>& support, const GeneratedSubmodel& s) {
  return std::all_of(support.begin(), support.end(), [&](const IndexLabel& i) { return s.contains(i); });
}

}  // namespace

GeneralizedTerm Lift(const OrderAutomorphism& alpha, const GeneralizedTerm& t) {
  std::vector<IndexLabel> moved;
  moved.reserve(t.arity());
  for (const IndexLabel& i : t.indices()) moved.push_back(alpha(i));
  return t.with_indices(std::move(moved));
}

unsigned SeparatingPower(const OrderAutomorphism& alpha, const std::set<IndexLabel>& labels) {
  RequireFixedPointFree(alpha);
  if (labels.empty()) throw DomainError("separating power needs a nonempty label set");
  std::vector<IndexLabel> images(labels.begin(), labels.end());
  for (unsigned m = 1; m <= kMaxSeparatingPower; ++m) {
    for (IndexLabel& i : images) i = alpha(i);
    if (std::none_of(images.begin(), images.end(), [&](const IndexLabel& i) { return labels.count(i) > 0; })) {
      return m;
    }
  }
  throw InvariantViolation("no separating power below " + std::to_string(kMaxSeparatingPower));
}

Classification Classify(const UltrapowerModel& model, const OrderAutomorphism& alpha, const GeneralizedTerm& t) {
  RequireFixedPointFree(alpha);
  Classification out;
  out.fixed = model.Eq(t, Lift(alpha, t));
  out.standard = model.IsStandard(t);
  if (out.fixed != out.standard.standard) {
    throw InvariantViolation(t.str() + (out.fixed ? " is fixed by the lift of " : " is moved by the lift of ") +
                             alpha.str() + (out.standard.standard ? " but standard" : " but nonstandard"));
  }
  return out;
}

GeneratedSubmodel GeneratedSubmodel::Finite(std::set<IndexLabel> labels) {
  GeneratedSubmodel s;
  s.labels_ = std::move(labels);
  return s;
}

GeneratedSubmodel GeneratedSubmodel::AtLeast(IndexLabel bound) {
  GeneratedSubmodel s;
  s.bound_ = std::move(bound);
  return s;
}

bool GeneratedSubmodel::contains(const IndexLabel& i) const {
  return bound_ ? !(i < *bound_) : labels_.count(i) > 0;
}

std::string GeneratedSubmodel::str() const { return bound_ ? ">=" + bound_->str() : Describe(labels_); }

bool InSubmodel(const UltrapowerModel& model, const GeneralizedTerm& t, const GeneratedSubmodel& s) {
  return SupportWithin(model.Support(t), s);
}

DemoReport RunChainDemo(const UltrapowerModel& model, int depth, int samples, std::uint64_t seed) {
  if (depth < 2) throw DomainError("chain depth must be at least 2, got " + std::to_string(depth));
  if (samples < 0) throw DomainError("sample count must be nonnegative");
  DemoReport report;
  report.name = "chain";
  for (int i = 0; i < depth; ++i) {
    const GeneralizedTerm g = GeneralizedTerm::Generator(i);
    const std::set<IndexLabel> support = model.Support(g);
    ++report.checks;
    const bool here = SupportWithin(support, GeneratedSubmodel::AtLeast(i));
    const bool next = SupportWithin(support, GeneratedSubmodel::AtLeast(i + 1));
    if (here && !next) {
      report.witnesses.push_back(g.str() + " in M_" + std::to_string(i) + " but not in M_" + std::to_string(i + 1));
    } else {
      ++report.violations;
      report.failures.push_back("properness at level " + std::to_string(i) + " fails for " + g.str());
    }
  }
  Rng rng(seed);
  for (int k = 0; k < samples; ++k) {
    const std::size_t arity = static_cast<std::size_t>(rng.uniform(0, 2));
    const std::vector<IndexLabel> labels = RandomLabels(rng, arity, 0, depth + 2);
    const GeneralizedTerm t =
        rng.chance(0.5) ? RandomTerm(rng, labels) : RandomStandardTerm(rng, labels, rng.uniform(0, 9));
    const std::set<IndexLabel> support = model.Support(t);
    // Levels 0..depth, plus the level above every label of t.
    int top = depth;
    for (const IndexLabel& i : labels) {
      top = std::max(top, static_cast<int>(i.position().convert_to<long long>()) + 1);
    }
    bool everywhere = true;
    for (int level = 0; level <= top; ++level) {
      everywhere = everywhere && SupportWithin(support, GeneratedSubmodel::AtLeast(level));
    }
    const StandardResult standard = model.IsStandard(t);
    ++report.checks;
    if (everywhere != standard.standard) {
      ++report.violations;
      report.failures.push_back(t.str() + (everywhere ? " lies in every level but is nonstandard"
                                                      : " is standard but misses a level"));
    }
  }
  return report;
}

DemoReport RunLatticeDemo(const UltrapowerModel& model, const std::set<IndexLabel>& s0,
                          const std::set<IndexLabel>& s1, int samples, std::uint64_t seed) {
  if (s0.empty() || s1.empty()) throw DomainError("lattice demo needs nonempty label sets");
  std::vector<IndexLabel> common;
  std::set_intersection(s0.begin(), s0.end(), s1.begin(), s1.end(), std::back_inserter(common));
  if (!common.empty()) {
    throw DomainError("label sets are not disjoint: both contain " + common.front().str());
  }
  if (samples < 0) throw DomainError("sample count must be nonnegative");
  DemoReport report;
  report.name = "lattice";
  const GeneratedSubmodel m0 = GeneratedSubmodel::Finite(s0);
  const GeneratedSubmodel m1 = GeneratedSubmodel::Finite(s1);
  std::set<IndexLabel> both = s0;
  both.insert(s1.begin(), s1.end());
  const GeneratedSubmodel m01 = GeneratedSubmodel::Finite(both);
  Rng rng(seed);
  auto fail = [&](std::string what) {
    ++report.violations;
    report.failures.push_back(std::move(what));
  };
  for (int k = 0; k < samples; ++k) {
    // A constructed coincidence f(S0) = g(S1).
    const Integer value = rng.uniform(0, 9);
    const GeneralizedTerm f = RandomStandardTerm(rng, RandomSubset(rng, s0, 3), value);
    const GeneralizedTerm g = RandomStandardTerm(rng, RandomSubset(rng, s1, 3), value);
    ++report.checks;
    if (!model.Eq(f, g)) {
      fail("constructed coincidence " + f.str() + " = " + g.str() + " does not hold");
    } else {
      const StandardResult a = model.IsStandard(f);
      const StandardResult b = model.IsStandard(g);
      if (!a.standard || !b.standard || a.value != b.value) {
        fail("coincidence " + f.str() + " = " + g.str() + " is not standard with a common value");
      } else if (k < 3) {
        report.witnesses.push_back(f.str() + " = " + g.str() + " = " + ToString(*a.value));
      }
    }
    // A random pair: any coincidence must be standard.
    const GeneralizedTerm p = RandomTerm(rng, RandomSubset(rng, s0, 3));
    const GeneralizedTerm q = RandomTerm(rng, RandomSubset(rng, s1, 3));
    ++report.checks;
    if (model.Eq(p, q)) {
      const StandardResult a = model.IsStandard(p);
      const StandardResult b = model.IsStandard(q);
      if (!a.standard || !b.standard || a.value != b.value) {
        fail("coincidence " + p.str() + " = " + q.str() + " is not standard with a common value");
      }
    }
    // Containment: M_S0 inside M_{S0 u S1}; M_S0 meets M_S1 only in standard elements.
    const std::set<IndexLabel> support = model.Support(p);
    ++report.checks;
    if (!SupportWithin(support, m0) || !SupportWithin(support, m01)) {
      fail(p.str() + " escapes the submodels generated by " + m0.str());
    } else if (SupportWithin(support, m1) && !model.IsStandard(p).standard) {
      fail(p.str() + " lies in both submodels but is nonstandard");
    }
  }
  return report;
}

}  // namespace upw
