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


#include <chrono>

#include <gtest/gtest.h>

#include "hlevel/oracle.hpp"
#include "hlevel/report.hpp"
#include "test_util.hpp"

namespace hlevel::oracle {
namespace {

TEST(Enumerate, ExactCounts) {
  EXPECT_EQ(enumerate_bijections(two(), two()).size(), 2u);
  EXPECT_EQ(enumerate_bijections(fin(0), fin(0)).size(), 1u);
  EXPECT_EQ(enumerate_bijections(fin(3), fin(3)).size(), 6u);
  EXPECT_EQ(enumerate_bijections(fin(2), fin(3)).size(), 0u);
  std::size_t f = 1;
  for (std::size_t n = 0; n <= kDefaultBound; ++n) {
    if (n > 0) f *= n;
    EXPECT_EQ(enumerate_bijections(fin(n), fin(n)).size(), f) << n;
  }
}

TEST(Enumerate, LexicographicAndDistinct) {
  std::vector<FinBij> ps = enumerate_bijections(fin(3), fin(3));
  std::vector<std::vector<std::size_t>> want = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  ASSERT_EQ(ps.size(), want.size());
  for (std::size_t i = 0; i < ps.size(); ++i) EXPECT_EQ(ps[i].mapping, want[i]);
  std::vector<FinBij> two_auts = enumerate_bijections(two(), two());
  EXPECT_EQ(two_auts[0], identity(two()));
  EXPECT_EQ(two_auts[1], swap());
}

TEST(Enumerate, BoundErrors) {
  EXPECT_THROW(enumerate_bijections(fin(5), fin(5)), OracleError);
  EXPECT_NO_THROW(enumerate_bijections(fin(5), fin(5), 5));
  EXPECT_THROW(enumerate_bijections(fin(1), fin(1), 99), OracleError);
  EXPECT_THROW(run_suites(std::nullopt, 99), OracleError);
  EXPECT_THROW(run_suites(std::string("no-such-suite")), OracleError);
}

TEST(Groupoid, LawsHoldExhaustively) {
  for (std::size_t b : {std::size_t{2}, std::size_t{4}}) {
    OracleReport r = check_groupoid_laws(b);
    EXPECT_TRUE(r.pass()) << b;
    EXPECT_EQ(r.violations, 0u);
    EXPECT_GT(r.cases, 0u);
  }
}

TEST(Groupoid, CorruptedCompositionYieldsOneCounterexample) {
  // c is a 3-cycle; c·c is corrupted to c. Identity and inverse laws never
  // compose c with itself, so only associativity can notice.
  const FinBij c{fin(3), fin(3), {1, 2, 0}};
  Composition bad = [&](const FinBij& p, const FinBij& q) {
    if (p == c && q == c) return c;
    return compose(p, q);
  };
  OracleReport r = check_groupoid_laws(3, bad);
  ASSERT_EQ(r.counterexamples.size(), 1u);
  EXPECT_EQ(r.counterexamples[0].law, "associativity");
  EXPECT_GT(r.violations, 0u);
  // The reported triple really is a violation of the corrupted table.
  const std::string& w = r.counterexamples[0].witness;
  EXPECT_NE(w.find("p="), std::string::npos);
  EXPECT_NE(w.find("q="), std::string::npos);
  EXPECT_NE(w.find("r="), std::string::npos);
  EXPECT_EQ(w, "p=[0 2 1] q=[1 0 2] r=[1 2 0]");
  const FinBij p{fin(3), fin(3), {0, 2, 1}}, q{fin(3), fin(3), {1, 0, 2}};
  EXPECT_EQ(compose(p, q), c);  // so (p·q)·r hits the corrupted entry
  EXPECT_FALSE(bad(bad(p, q), c) == bad(p, bad(q, c)));
}

TEST(Transport, ConjugationAndFixedPoints) {
  EXPECT_EQ(transport_loop(swap(), swap()), swap());
  for (const FinBij& p : enumerate_bijections(fin(3), fin(3))) {
    EXPECT_EQ(transport_loop(identity(fin(3)), p), p);
  }
  OracleReport r = check_transport_conjugation(4);
  EXPECT_TRUE(r.pass());
  // Four checks per loop and two per (loop, path) pair over groups of order 1, 1, 2, 6, 24.
  std::size_t want = 0;
  for (std::size_t g : {1, 1, 2, 6, 24}) want += 2 * g + 2 * g * g;
  EXPECT_EQ(r.cases, want);
  EXPECT_EQ(r.fact("tr(swap, swap)"), "[1 0]");
}

TEST(KWitnesses, ShadowsOfAlphaAndBeta) {
  OracleReport r = check_K_witnesses();
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.fact("alpha.1"), identity(two()).show());
  EXPECT_EQ(r.fact("beta.1"), swap().show());
  EXPECT_EQ(r.fact("distinct"), "true");
  EXPECT_EQ(r.fact("|K(2,p)|"), "2");
}

TEST(KWitnesses, PolarityMatchesCorpusUnderMutation) {
  // Unmutated: the oracle and the level-1 corpus both succeed.
  CorpusReport ok = check_corpus(testing::corpus(1));
  EXPECT_EQ(ok.status("univ1-not-groupoid"), DeclStatus::kAccepted);
  EXPECT_TRUE(check_K_witnesses().pass());
  // swap replaced by the identity: both fail.
  Corpus m = testing::corpus(1);
  CorpusFile* base = m.find("prelude/01-base.hott");
  ASSERT_NE(base, nullptr);
  std::string from = "fun b => twoElim (_ => Two) 1₂ 0₂ b";
  base->text.replace(base->text.find(from), from.size(), "fun b => b");
  CorpusReport bad = check_corpus(m);
  EXPECT_EQ(bad.status("univ1-not-groupoid"), DeclStatus::kRejected);
  OracleReport r = check_K_witnesses(identity(two()));
  EXPECT_FALSE(r.pass());
  ASSERT_EQ(r.counterexamples.size(), 1u);
  EXPECT_EQ(r.counterexamples[0].law, "distinct");
}

TEST(SigmaLoops, CardinalitiesMatch) {
  OracleReport r = check_sigma_loop_cardinality(4);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.fact("(2,0) with const 1"), "1 = 1");
  EXPECT_EQ(r.fact("(2,0) with const (2,0)"), "1 = 1");
  EXPECT_EQ(r.fact("(3,0) with const (2,0)"), "1 = 1");
  EXPECT_EQ(r.fact("(U,2) with El at 0"), "1 = 1");
  EXPECT_EQ(r.fact("(U,2) with const (2,0)"), "2 = 2");
  EXPECT_EQ(r.fact("(U,2) with const (U,2)"), "4 = 4");
  EXPECT_EQ(r.fact("(U,3) with El at 0"), "2 = 2");
  EXPECT_EQ(r.fact("(U,3) with const (2,0)"), "6 = 6");
  // Instances above the bound are skipped, not failed.
  OracleReport small = check_sigma_loop_cardinality(2);
  EXPECT_TRUE(small.pass());
  EXPECT_FALSE(small.fact("(U,3) with El at 0").has_value());
}

TEST(Suites, ModelledLemmasExistInCorpus) {
  CorpusReport r = check_corpus(testing::corpus(2));
  for (const auto& rep : run_suites(std::nullopt)) {
    EXPECT_FALSE(rep.models.empty()) << rep.suite;
    for (const auto& m : rep.models) EXPECT_EQ(r.status(m), DeclStatus::kAccepted) << rep.suite << " " << m;
  }
}

TEST(Suites, DeterministicAndFast) {
  auto start = std::chrono::steady_clock::now();
  auto dump = [] {
    report::Json j = report::Json::array();
    for (const auto& r : run_suites(std::nullopt)) j.push_back(report::suite(r));
    return j.dump();
  };
  std::string a = dump(), b = dump(), c = dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(b, c);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 5.0);
  std::vector<OracleReport> one = run_suites(std::string("transport-conjugation"));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].suite, "transport-conjugation");
}

}  // namespace
}  // namespace hlevel::oracle
