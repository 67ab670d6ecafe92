// Copyright 2026 The hlevel Authors
//
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

// Randomized properties of the kernel over generated well-typed terms and
// the corpus. Seeds are fixed so failures reproduce.

#include <gtest/gtest.h>

#include <regex>
#include <string>
#include <variant>
#include <vector>

#include "hlevel/check.hpp"
#include "hlevel/eval.hpp"
#include "hlevel/report.hpp"
#include "hlevel/syntax.hpp"
#include "term_gen.hpp"
#include "test_util.hpp"

namespace hlevel {
namespace {

using testing::TermGen;
using testing::Ty;
using testing::mk;

constexpr unsigned kSamples = 1000;

struct Sample {
  std::string type;
  std::string term;
  hlevel::testing::TyPtr ty;
};

Sample sample(unsigned seed) {
  TermGen gen(seed);
  auto ty = gen.type({}, 2);
  return {show(ty), gen.term({}, ty, 3), ty};
}

TermPtr core(const Globals& g, const std::string& src) {
  auto parsed = parse_expr(src);
  EXPECT_TRUE(parsed.diagnostics.empty()) << src;
  auto r = resolve_expr(parsed.expr, {}, g.scope());
  EXPECT_TRUE(r.diagnostics.empty()) << src;
  return r.term;
}

std::string raise_universes(const std::string& s) {
  static const std::regex re(R"(\bU(\d+)\b)");
  std::string out;
  auto it = std::sregex_iterator(s.begin(), s.end(), re);
  std::size_t last = 0;
  for (; it != std::sregex_iterator(); ++it) {
    out += s.substr(last, it->position() - last);
    out += "U" + std::to_string(std::stoi((*it)[1].str()) + 1);
    last = it->position() + it->length();
  }
  return out + s.substr(last);
}

bool is_canonical(const TermPtr& t) {
  if (std::holds_alternative<core::ZeroTwo>(t->node) || std::holds_alternative<core::OneTwo>(t->node) ||
      std::holds_alternative<core::Zero>(t->node)) {
    return true;
  }
  if (const auto* s = std::get_if<core::Suc>(&t->node)) return is_canonical(s->pred);
  return false;
}

TEST(Property, GeneratedTermsTypeCheck) {
  for (unsigned seed = 0; seed < kSamples; ++seed) {
    Sample s = sample(seed);
    Globals g;
    auto m = check_module(g, "goal g : " + s.type + " := " + s.term, "<gen>");
    ASSERT_TRUE(m.ok()) << "seed " << seed << "\n" << s.type << "\n" << s.term << "\n" << testing::first_error(m);
  }
}

TEST(Property, NormalizeIsIdempotent) {
  for (unsigned seed = 0; seed < kSamples; ++seed) {
    Sample s = sample(seed);
    Globals g;
    TermPtr t = core(g, "(" + s.term + " : " + s.type + ")");
    TermPtr n1 = normalize(g, t);
    TermPtr n2 = normalize(g, n1);
    ASSERT_TRUE(alpha_equal(n1, n2)) << "seed " << seed << "\n" << print(n1) << "\n" << print(n2);
  }
}

TEST(Property, NormalFormsKeepTheirType) {
  for (unsigned seed = 0; seed < kSamples; ++seed) {
    Sample s = sample(seed);
    Globals g;
    std::string nf = print(normalize(g, core(g, "(" + s.term + " : " + s.type + ")")));
    auto m = check_module(g, "goal g : " + s.type + " := " + nf, "<gen>");
    ASSERT_TRUE(m.ok()) << "seed " << seed << "\n" << s.type << "\n" << nf << "\n" << testing::first_error(m);
  }
}

TEST(Property, NormalizeIsIdempotentOnCorpus) {
  // The generic and prelude files: their bodies normalize quickly.
  auto& l = testing::level2();
  std::size_t checked = 0;
  for (const auto& f : testing::corpus(2).files) {
    if (f.section == Section::kGenerated) continue;
    for (const auto& name : f.declarations) {
      const GlobalEntry* e = l.globals.find(name);
      if (e == nullptr || e->decl.body == nullptr) continue;
      TermPtr n1 = normalize(l.globals, e->decl.body);
      ASSERT_TRUE(alpha_equal(n1, normalize(l.globals, n1))) << name;
      ++checked;
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(Property, UniverseRaisingPreservesTyping) {
  // Terms whose inner annotations and motives are universe-free.
  std::size_t with_universes = 0;
  for (unsigned seed = 0; seed < kSamples; ++seed) {
    TermGen gen(seed);
    gen.annotate_universes = false;
    auto ty = gen.type({}, 2);
    std::string type = show(ty), term = gen.term({}, ty, 3);
    std::string raised = raise_universes(type);
    if (raised == type) continue;
    ++with_universes;
    Globals g;
    auto before = check_module(g, "goal g : " + type + " := " + term, "<gen>");
    ASSERT_TRUE(before.ok()) << "seed " << seed << "\n" << type << "\n" << term;
    auto after = check_module(g, "goal g : " + raised + " := " + term, "<gen>");
    ASSERT_TRUE(after.ok()) << "seed " << seed << "\n" << raised << "\n" << term << "\n"
                            << testing::first_error(after);
  }
  EXPECT_GT(with_universes, kSamples / 4);
}

TEST(Property, UniverseRaisingStopsAtFixedLevelAnnotations) {
  // Pi domains are compared by conversion, so a subterm pinned to
  // U0 -> U0 does not fit U1 -> U1. Raising only the codomain is fine.
  Globals g;
  std::string t = "((fun A => A) : U0 -> U0)";
  EXPECT_TRUE(testing::accepts(g, "goal a : U0 -> U0 := " + t));
  EXPECT_TRUE(testing::accepts(g, "goal b : U0 -> U1 := " + t));
  auto m = check_module(g, "goal c : U1 -> U1 := " + t, "<test>");
  ASSERT_EQ(m.rejected(), 1u);
  EXPECT_EQ(m.decls[0].diagnostics.at(0).code, "mismatch");
}

TEST(Property, EtaForFunctions) {
  std::size_t functions = 0;
  for (unsigned seed = 0; seed < kSamples; ++seed) {
    Sample s = sample(seed);
    if (s.ty->kind != Ty::kArrow && s.ty->kind != Ty::kPiU) continue;
    ++functions;
    Globals g;
    Checker c(g);
    TermPtr type = core(g, s.type);
    TermPtr f = core(g, "(" + s.term + " : " + s.type + ")");
    TermPtr expanded = make_term(core::Lam{"z", make_term(core::App{shift(f, 1), make_term(core::Var{0})})});
    ValuePtr tv = eval(g, {}, type);
    ASSERT_TRUE(c.convertible({}, tv, eval(g, {}, f), eval(g, {}, expanded))) << "seed " << seed;
    ASSERT_TRUE(c.convertible({}, tv, eval(g, {}, expanded), eval(g, {}, f))) << "seed " << seed;
  }
  EXPECT_GT(functions, kSamples / 5);
}

TEST(Property, CanonicityAtTwoAndNat) {
  std::size_t n = 0;
  for (unsigned seed = 0; n < kSamples; ++seed) {
    TermGen gen(seed);
    auto ty = seed % 2 ? mk({Ty::kTwo}) : mk({Ty::kNat});
    std::string src = "(" + gen.term({}, ty, 4) + " : " + show(ty) + ")";
    Globals g;
    TermPtr nf = normalize(g, core(g, src));
    ASSERT_TRUE(is_canonical(nf)) << src << "\n  ~> " << print(nf);
    ++n;
  }
}

TEST(Property, CanonicityOnAxiomFreeCorpus) {
  auto& l = testing::level2();
  std::size_t checked = 0;
  for (const auto& f : testing::corpus(2).files) {
    if (!f.tags.empty()) continue;
    for (const auto& name : f.declarations) {
      const GlobalEntry* e = l.globals.find(name);
      if (e == nullptr || e->decl.body == nullptr) continue;
      TermPtr ty = quote(l.globals, 0, e->type);
      if (!std::holds_alternative<core::TwoType>(ty->node) && !std::holds_alternative<core::NatType>(ty->node)) continue;
      TermPtr nf = normalize(l.globals, e->decl.body);
      EXPECT_TRUE(is_canonical(nf)) << name << " ~> " << print(nf);
      ++checked;
    }
  }
  EXPECT_GT(checked, 0u);
}

TEST(Property, ConversionIsAnEquivalence) {
  // Small closed functions Two -> Two collide often, so all three laws get
  // exercised on both outcomes.
  auto fn = mk({Ty::kArrow, 0, "", mk({Ty::kTwo}), mk({Ty::kTwo})});
  Globals g;
  Checker c(g);
  ValuePtr tv = eval(g, {}, core(g, show(fn)));
  std::vector<ValuePtr> vals;
  for (unsigned seed = 0; seed < 40; ++seed) {
    TermGen gen(1000 + seed);
    vals.push_back(eval(g, {}, core(g, "(" + gen.term({}, fn, 2) + " : " + show(fn) + ")")));
  }
  std::size_t equal_pairs = 0;
  for (const auto& a : vals) {
    ASSERT_TRUE(c.convertible({}, tv, a, a));
    for (const auto& b : vals) {
      bool ab = c.convertible({}, tv, a, b);
      ASSERT_EQ(ab, c.convertible({}, tv, b, a));
      if (!ab) continue;
      ++equal_pairs;
      for (const auto& d : vals) {
        if (c.convertible({}, tv, b, d)) ASSERT_TRUE(c.convertible({}, tv, a, d));
      }
    }
  }
  EXPECT_GT(equal_pairs, vals.size());
  EXPECT_LT(equal_pairs, vals.size() * vals.size());
}

TEST(Property, CheckReportsAreDeterministic) {
  std::string src;
  for (unsigned seed = 0; seed < 60; ++seed) {
    Sample s = sample(seed);
    // Every fifth goal is made ill-typed so diagnostics are compared too.
    std::string type = seed % 5 == 4 ? "Empty" : s.type;
    src += "goal g" + std::to_string(seed) + " : " + type + " := " + s.term + "\n";
  }
  std::vector<std::string> dumps;
  for (int run = 0; run < 3; ++run) {
    Globals g;
    auto m = check_module(g, src, "<gen>");
    EXPECT_EQ(m.rejected(), 12u);
    dumps.push_back(report::module(m, src).dump());
  }
  EXPECT_EQ(dumps[0], dumps[1]);
  EXPECT_EQ(dumps[1], dumps[2]);

  std::vector<std::string> corpus_dumps;
  for (int run = 0; run < 3; ++run) {
    auto l = testing::load(testing::corpus(1));
    std::string all;
    for (std::size_t i = 0; i < l.modules.size(); ++i) {
      all += report::module(l.modules[i], testing::corpus(1).files[i].text).dump();
    }
    corpus_dumps.push_back(all);
  }
  EXPECT_EQ(corpus_dumps[0], corpus_dumps[1]);
  EXPECT_EQ(corpus_dumps[1], corpus_dumps[2]);
}

}  // namespace
}  // namespace hlevel
