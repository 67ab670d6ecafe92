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

// Acceptance run: one PASS/FAIL line per criterion. Criteria 1-3 drive the
// CLI end to end (gen into a scratch directory, then check its manifest)
// and are timed; the others call the library directly.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hlevel/check.hpp"
#include "hlevel/cli.hpp"
#include "hlevel/corpus.hpp"
#include "hlevel/eval.hpp"
#include "hlevel/oracle.hpp"
#include "hlevel/report.hpp"
#include "json.hpp"
#include "term_gen.hpp"
#include "test_util.hpp"

namespace hlevel {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using nlohmann::json;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << " s";
  return o.str();
}

struct LevelRun {
  bool ran = false;
  double seconds = 0;
  std::map<std::string, std::string> status;  // declaration -> accepted|rejected
  std::vector<json> modules;
  std::string error;
};

// gen --level N into a scratch directory, then check its manifest.
LevelRun gen_and_check(int level, const fs::path& scratch) {
  LevelRun r;
  fs::path out = scratch / ("level-" + std::to_string(level));
  std::ostringstream sink, err, report;
  auto t0 = Clock::now();
  int gen = run_cli({"gen", "--level", std::to_string(level), "--out", out.string()}, sink, err);
  if (gen != 0) {
    r.error = "gen exited " + std::to_string(gen) + ": " + err.str();
    return r;
  }
  int check = run_cli({"--format", "json", "check", (out / "manifest.json").string()}, report, err);
  r.seconds = seconds_since(t0);
  r.ran = true;
  json j = json::parse(report.str());
  if (check != 0) r.error = "check exited " + std::to_string(check);
  for (const auto& m : j["modules"]) {
    r.modules.push_back(m);
    for (const auto& d : m["declarations"]) r.status[d["name"]] = d["status"];
  }
  return r;
}

void require_accepted(Outcome& o, const LevelRun& r, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    auto it = r.status.find(n);
    o.require(it != r.status.end() && it->second == "accepted", std::string(n) + " not accepted");
  }
}

Outcome criterion_level(const LevelRun& r, double limit, std::initializer_list<const char*> names) {
  Outcome o;
  o.require(r.ran && r.error.empty(), r.error);
  require_accepted(o, r, names);
  o.require(r.seconds < limit, "took " + fmt_seconds(r.seconds));
  if (o.pass) o.detail = std::to_string(r.status.size()) + " declarations accepted in " + fmt_seconds(r.seconds);
  return o;
}

Outcome criterion_generic(const std::vector<const LevelRun*>& runs) {
  Outcome o;
  std::size_t instances = 0;
  for (std::size_t level = 0; level < runs.size(); ++level) {
    const LevelRun& r = *runs[level];
    for (const auto& m : r.modules) {
      std::string file = m["file"];
      if (file.find("generic/") != std::string::npos) o.require(m["status"] == "pass", file + " fails");
    }
    for (std::size_t i = 0; i <= level + 1; ++i) {
      for (std::string base : {"om-si-comm@", "om-pi-comm@", "forget@", "LG@"}) {
        if (base == "LG@" && i > level) continue;
        std::string name = base + std::to_string(i);
        auto it = r.status.find(name);
        o.require(it != r.status.end() && it->second == "accepted",
                  name + " at level " + std::to_string(level));
        ++instances;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(instances) + " generic instances accepted across levels 0-2";
  return o;
}

Corpus mutate(const Corpus& c, std::string_view path, std::string_view from, std::string_view to, Outcome& o) {
  Corpus m = c;
  CorpusFile* f = m.find(path);
  o.require(f != nullptr, std::string(path) + " missing");
  if (f == nullptr) return m;
  std::size_t at = f->text.find(from);
  o.require(at != std::string::npos, "mutation site not found in " + std::string(path));
  if (at != std::string::npos) f->text.replace(at, from.size(), to);
  return m;
}

Outcome criterion_mutation() {
  Outcome o;
  std::size_t flips = 0;
  {
    Corpus m = mutate(testing::corpus(0), "prelude/01-base.hott", "fun b => twoElim (_ => Two) 1₂ 0₂ b",
                      "fun b => b", o);
    CorpusReport r = check_corpus(m);
    o.require(r.status("U0-not-set") == DeclStatus::kRejected, "swap := id still proves U0-not-set");
    ++flips;
  }
  {
    Corpus m = mutate(testing::corpus(1), "generated/level-1/03-chain.hott",
                      "def beta : K := fun X p => (p, refl (comp@1 U0 X X X p p))",
                      "def beta : K := fun X p => (refl X, refl (comp@1 U0 X X X p p))", o);
    CorpusReport r = check_corpus(m);
    o.require(r.status("U1-not-groupoid") == DeclStatus::kRejected, "beta.1 := refl still proves U1-not-groupoid");
    ++flips;
  }
  const Corpus& c = testing::corpus(2);
  for (const auto& [axiom, tag] : {std::pair{"ua", "requires-ua"}, {"funext", "requires-funext"}}) {
    CheckOptions opts;
    opts.omit_axioms.insert(axiom);
    CorpusReport r = check_corpus(c, opts);
    for (const auto& f : c.files) {
      bool tagged = std::find(f.tags.begin(), f.tags.end(), tag) != f.tags.end();
      const ModuleReport* m = r.module(f.path);
      if (tagged) {
        o.require(m && !m->ok(), f.path + " accepted without " + axiom);
        ++flips;
      } else {
        o.require(m && m->ok(), f.path + " untagged but needs " + axiom);
      }
    }
  }
  if (o.pass) o.detail = std::to_string(flips) + " mutations flip to reject, 0 false accepts";
  return o;
}

Outcome criterion_oracle() {
  Outcome o;
  auto t0 = Clock::now();
  std::vector<oracle::OracleReport> reports = oracle::run_suites(std::nullopt, 4);
  double secs = seconds_since(t0);
  std::map<std::string, const oracle::OracleReport*> by;
  for (const auto& r : reports) {
    by[r.suite] = &r;
    o.require(r.pass(), r.suite + ": " + (r.counterexamples.empty() ? "" : r.counterexamples[0].law));
  }
  auto fact = [&](const std::string& suite, const std::string& name, const std::string& want) {
    auto it = by.find(suite);
    auto v = it == by.end() ? std::nullopt : it->second->fact(name);
    o.require(v && *v == want, suite + " " + name + " = " + v.value_or("?") + ", expected " + want);
  };
  fact("bijection-enumeration", "|Bij(2,2)|", "2");
  fact("bijection-enumeration", "|Bij(3,3)|", "6");
  fact("K-witnesses", "alpha.1", "[0 1]");
  fact("K-witnesses", "beta.1", "[1 0]");
  fact("K-witnesses", "distinct", "true");
  for (const auto& [name, n] : std::vector<std::pair<std::string, std::string>>{
           {"(2,0) with const 1", "1"}, {"(2,0) with const (2,0)", "1"}, {"(3,0) with const (2,0)", "1"},
           {"(U,2) with El at 0", "1"}, {"(U,2) with const (2,0)", "2"}, {"(U,2) with const (U,2)", "4"},
           {"(U,3) with El at 0", "2"}, {"(U,3) with const (2,0)", "6"}}) {
    fact("sigma-loop-cardinality", name, n + " = " + n);
  }
  for (const char* law : {"fixed-point-refl", "fixed-point-self", "conjugation"}) {
    const auto* t = by.count("transport-conjugation") ? by["transport-conjugation"] : nullptr;
    bool broken = t == nullptr;
    if (t) {
      for (const auto& ce : t->counterexamples) broken = broken || ce.law == law;
    }
    o.require(!broken, std::string("transport ") + law);
  }
  o.require(secs < 5.0, "oracle took " + fmt_seconds(secs));
  if (o.pass) {
    std::size_t cases = 0;
    for (const auto& r : reports) cases += r.cases;
    o.detail = std::to_string(cases) + " exhaustive cases, exact facts match, " + fmt_seconds(secs);
  }
  return o;
}

TermPtr core(const Globals& g, const std::string& src) {
  auto parsed = parse_expr(src);
  if (!parsed.diagnostics.empty()) return nullptr;
  auto r = resolve_expr(parsed.expr, {}, g.scope());
  return r.diagnostics.empty() ? r.term : nullptr;
}

bool canonical(const TermPtr& t) {
  if (std::holds_alternative<core::ZeroTwo>(t->node) || std::holds_alternative<core::OneTwo>(t->node) ||
      std::holds_alternative<core::Zero>(t->node)) {
    return true;
  }
  const auto* s = std::get_if<core::Suc>(&t->node);
  return s && canonical(s->pred);
}

Outcome criterion_properties() {
  using testing::TermGen;
  using testing::Ty;
  Outcome o;
  constexpr unsigned kSamples = 500;
  static const std::regex universe(R"(\bU(\d+)\b)");
  std::size_t idem = 0, raised = 0, eta = 0, canon = 0;
  for (unsigned seed = 0; seed < kSamples && o.pass; ++seed) {
    std::string where = " (seed " + std::to_string(seed) + ")";
    TermGen gen(seed);
    auto ty = gen.type({}, 2);
    std::string type = show(ty), term = gen.term({}, ty, 3);
    Globals g;
    o.require(check_module(g, "goal g : " + type + " := " + term, "<gen>").ok(), "generated term rejected" + where);
    TermPtr t = core(g, "(" + term + " : " + type + ")");
    o.require(t != nullptr, "generated term does not resolve" + where);
    if (!t) break;
    TermPtr n1 = normalize(g, t);
    o.require(alpha_equal(n1, normalize(g, n1)), "normalize not idempotent" + where);
    ++idem;
    if (ty->kind == Ty::kArrow || ty->kind == Ty::kPiU) {
      Checker c(g);
      TermPtr x = make_term(core::Lam{"z", make_term(core::App{shift(t, 1), make_term(core::Var{0})})});
      o.require(c.convertible({}, eval(g, {}, core(g, type)), eval(g, {}, t), eval(g, {}, x)),
                "eta for functions" + where);
      ++eta;
    }
    TermGen plain(seed);
    plain.annotate_universes = false;
    auto pty = plain.type({}, 2);
    std::string ptype = show(pty), pterm = plain.term({}, pty, 3);
    std::string up;
    std::size_t last = 0;
    for (auto it = std::sregex_iterator(ptype.begin(), ptype.end(), universe); it != std::sregex_iterator(); ++it) {
      up += ptype.substr(last, it->position() - last) + "U" + std::to_string(std::stoi((*it)[1].str()) + 1);
      last = it->position() + it->length();
    }
    up += ptype.substr(last);
    if (up != ptype) {
      Globals h;
      o.require(check_module(h, "goal g : " + ptype + " := " + pterm, "<gen>").ok() &&
                    check_module(h, "goal g : " + up + " := " + pterm, "<gen>").ok(),
                "universe raise rejected" + where);
      ++raised;
    }
    TermGen ground(seed);
    auto base = seed % 2 ? testing::mk({Ty::kTwo}) : testing::mk({Ty::kNat});
    TermPtr b = core(g, "(" + ground.term({}, base, 4) + " : " + show(base) + ")");
    o.require(b && canonical(normalize(g, b)), "non-canonical closed normal form" + where);
    ++canon;
  }
  // Determinism: three checks of the level-1 corpus give identical JSON.
  std::set<std::string> dumps;
  for (int run = 0; run < 3; ++run) {
    testing::Loaded l = testing::load(testing::corpus(1));
    std::string all;
    for (std::size_t i = 0; i < l.modules.size(); ++i) {
      all += report::module(l.modules[i], testing::corpus(1).files[i].text).dump();
    }
    dumps.insert(all);
  }
  o.require(dumps.size() == 1, "check reports differ across runs");
  if (o.pass) {
    o.detail = std::to_string(idem) + " idempotent, " + std::to_string(raised) + " raised, " + std::to_string(eta) +
               " eta, " + std::to_string(canon) + " canonical, reports identical x3";
  }
  return o;
}

Outcome criterion_coverage(const LevelRun& r) {
  Outcome o;
  const Corpus& c = testing::corpus(2);
  std::map<std::string, std::string> table;
  for (const auto& s : c.symbols) table.emplace(s.symbol, s.decl);
  std::vector<std::string> required = required_symbols(2);
  for (const auto& sym : required) {
    auto it = table.find(sym);
    o.require(it != table.end(), "unmapped symbol " + sym);
    if (it == table.end()) continue;
    auto st = r.status.find(it->second);
    o.require(st != r.status.end() && st->second == "accepted", sym + " -> " + it->second + " not accepted");
  }
  if (o.pass) o.detail = std::to_string(required.size()) + " symbols mapped to accepted declarations";
  return o;
}

int run() {
  fs::path scratch = fs::temp_directory_path() / ("hlevel-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(scratch);
  LevelRun l0 = gen_and_check(0, scratch), l1 = gen_and_check(1, scratch), l2 = gen_and_check(2, scratch);
  fs::remove_all(scratch);

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"level 0: U0 is not a set",
       [&] { return criterion_level(l0, 10, {"U0-not-set", "univ0-not-set", "swap", "iseq-swap"}); }},
      {"level 1: U1 is not a groupoid",
       [&] {
         return criterion_level(l1, 60, {"U1-not-groupoid", "univ1-not-groupoid", "K", "alpha", "beta",
                                         "transport-loop@1", "K-fib-retract"});
       }},
      {"level 2: theorem instances",
       [&] {
         return criterion_level(l2, 600, {"U-not-type@2", "thm1@2", "Loop-strict@1", "Utr-strict@1",
                                          "Loop-strict@2", "Utr-strict@2", "xi@2", "d@2", "forget@3", "LG@2"});
       }},
      {"generic lemmas at every level", [&] { return criterion_generic({&l0, &l1, &l2}); }},
      {"mutation suite", criterion_mutation},
      {"oracle exact values", criterion_oracle},
      {"kernel properties", criterion_properties},
      {"symbol coverage", [&] { return criterion_coverage(l2); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << o.detail << ")" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace hlevel

int main() { return hlevel::run(); }
