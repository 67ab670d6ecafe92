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

#include <algorithm>
#include <cctype>

#include "hlevel/syntax.hpp"
#include "term_walk.hpp"

namespace hlevel {
namespace {

// Precedence: 0 binders and arrows, 1 products, 2 applications, 3 atoms.
enum Prec { kBinder = 0, kProd = 1, kApp = 2, kAtom = 3 };

bool valid_hint(const std::string& n) {
  if (n.empty() || n == "_") return false;
  unsigned char c = n[0];
  return std::isalpha(c) || c == '_' || c >= 0x80;
}

class Printer {
 public:
  Printer(std::vector<std::string> ctx, std::set<std::string> globals)
      : ctx_(std::move(ctx)), globals_(std::move(globals)) {}

  std::string go(const TermPtr& t, int prec) {
    auto wrap = [&](int own, std::string s) {
      return own < prec ? "(" + s + ")" : s;
    };
    return std::visit(
        detail::overloaded{
            [&](const core::Var& v) -> std::string {
              if (v.index < ctx_.size()) return ctx_[ctx_.size() - 1 - v.index];
              return "#" + std::to_string(v.index);
            },
            [&](const core::Universe& u) -> std::string { return "U" + std::to_string(u.level.index); },
            [&](const core::Pi& p) -> std::string {
              if (!occurs_free(p.codomain, 0)) {
                std::string dom = go(p.domain, kProd);
                std::string cod = under({"_"}, p.codomain, kBinder);
                return wrap(kBinder, dom + " -> " + cod);
              }
              std::string dom = go(p.domain, kBinder);
              std::string x = fresh(p.name);
              std::string cod = under({x}, p.codomain, kBinder);
              return wrap(kBinder, "(" + x + " : " + dom + ") -> " + cod);
            },
            [&](const core::Sigma& p) -> std::string {
              if (!occurs_free(p.second, 0)) {
                std::string fst = go(p.first, kApp);
                std::string snd = under({"_"}, p.second, kProd);
                return wrap(kProd, fst + " * " + snd);
              }
              std::string fst = go(p.first, kBinder);
              std::string x = fresh(p.name);
              std::string snd = under({x}, p.second, kBinder);
              return wrap(kBinder, "(" + x + " : " + fst + ") * " + snd);
            },
            [&](const core::Lam&) -> std::string {
              std::string names;
              std::size_t mark = ctx_.size();
              TermPtr cur = t;
              while (auto* l = std::get_if<core::Lam>(&cur->node)) {
                std::string x = occurs_free(l->body, 0) ? fresh(l->name) : "_";
                names += " " + x;
                ctx_.push_back(x);
                cur = l->body;
              }
              std::string body = go(cur, kBinder);
              ctx_.resize(mark);
              return wrap(kBinder, "fun" + names + " => " + body);
            },
            [&](const core::App& a) -> std::string {
              return wrap(kApp, go(a.fn, kApp) + " " + go(a.arg, kAtom));
            },
            [&](const core::Pair& p) -> std::string {
              return "(" + go(p.first, kBinder) + ", " + go(p.second, kBinder) + ")";
            },
            [&](const core::Fst& p) -> std::string { return wrap(kApp, "fst " + go(p.pair, kAtom)); },
            [&](const core::Snd& p) -> std::string { return wrap(kApp, "snd " + go(p.pair, kAtom)); },
            [&](const core::IdType& p) -> std::string {
              return wrap(kApp, "Id " + go(p.type, kAtom) + " " + go(p.lhs, kAtom) + " " + go(p.rhs, kAtom));
            },
            [&](const core::Refl& p) -> std::string { return wrap(kApp, "refl " + go(p.term, kAtom)); },
            [&](const core::J& j) -> std::string {
              std::string x = fresh(j.motive_names[0]);
              ctx_.push_back(x);
              std::string y = fresh(j.motive_names[1]);
              ctx_.push_back(y);
              std::string p = fresh(j.motive_names[2]);
              ctx_.pop_back();
              ctx_.pop_back();
              std::string motive = under({x, y, p}, j.motive, kBinder);
              std::string b = fresh(j.base_name);
              std::string base = under({b}, j.base, kBinder);
              return wrap(kApp, "J (" + x + " " + y + " " + p + " => " + motive + ") (" + b + " => " +
                                    base + ") " + go(j.path, kAtom));
            },
            [&](const core::NatType&) -> std::string { return "Nat"; },
            [&](const core::Zero&) -> std::string { return "zero"; },
            [&](const core::Suc& s) -> std::string {
              std::uint64_t n = 1;
              TermPtr cur = s.pred;
              while (auto* inner = std::get_if<core::Suc>(&cur->node)) {
                ++n;
                cur = inner->pred;
              }
              if (std::holds_alternative<core::Zero>(cur->node)) return std::to_string(n);
              return wrap(kApp, "suc " + go(s.pred, kAtom));
            },
            [&](const core::NatElim& e) -> std::string {
              std::string m = fresh(e.motive_name);
              std::string motive = under({m}, e.motive, kBinder);
              std::string k = fresh(e.step_names[0]);
              ctx_.push_back(k);
              std::string r = fresh(e.step_names[1]);
              ctx_.pop_back();
              std::string step = under({k, r}, e.step, kBinder);
              return wrap(kApp, "natElim (" + m + " => " + motive + ") " + go(e.base, kAtom) + " (" + k +
                                    " " + r + " => " + step + ") " + go(e.target, kAtom));
            },
            [&](const core::EmptyType&) -> std::string { return "Empty"; },
            [&](const core::EmptyElim& e) -> std::string {
              std::string m = fresh(e.motive_name);
              std::string motive = under({m}, e.motive, kBinder);
              return wrap(kApp, "emptyElim (" + m + " => " + motive + ") " + go(e.target, kAtom));
            },
            [&](const core::UnitType&) -> std::string { return "Unit"; },
            [&](const core::Star&) -> std::string { return "star"; },
            [&](const core::TwoType&) -> std::string { return "Two"; },
            [&](const core::ZeroTwo&) -> std::string { return "0\xE2\x82\x82"; },
            [&](const core::OneTwo&) -> std::string { return "1\xE2\x82\x82"; },
            [&](const core::TwoElim& e) -> std::string {
              std::string m = fresh(e.motive_name);
              std::string motive = under({m}, e.motive, kBinder);
              return wrap(kApp, "twoElim (" + m + " => " + motive + ") " + go(e.case0, kAtom) + " " +
                                    go(e.case1, kAtom) + " " + go(e.target, kAtom));
            },
            [&](const core::AxiomRef& r) -> std::string { return r.name; },
            [&](const core::Ann& a) -> std::string {
              // A bare name before ':' would re-parse as a binder group.
              bool bare = std::holds_alternative<core::Var>(a.term->node) ||
                          std::holds_alternative<core::AxiomRef>(a.term->node);
              std::string inner = bare ? "(" + go(a.term, kBinder) + ")" : go(a.term, kBinder);
              return "(" + inner + " : " + go(a.type, kBinder) + ")";
            },
        },
        t->node);
  }

 private:
  std::string under(std::vector<std::string> names, const TermPtr& t, int prec) {
    std::size_t mark = ctx_.size();
    for (auto& n : names) ctx_.push_back(std::move(n));
    std::string s = go(t, prec);
    ctx_.resize(mark);
    return s;
  }

  bool taken(const std::string& n) const {
    return is_keyword(n) || globals_.contains(n) ||
           std::find(ctx_.begin(), ctx_.end(), n) != ctx_.end();
  }

  // A name that shadows nothing in scope, so every reference stays unambiguous.
  std::string fresh(const std::string& hint) const {
    std::string base = valid_hint(hint) && !is_keyword(hint) ? hint : "x";
    if (!taken(base)) return base;
    for (std::size_t i = 1;; ++i) {
      std::string cand = base + std::to_string(i);
      if (!taken(cand)) return cand;
    }
  }

  std::vector<std::string> ctx_;
  std::set<std::string> globals_;
};

}  // namespace

std::string print(const TermPtr& term, const std::vector<std::string>& ctx) {
  std::set<std::string> globals;
  collect_refs(term, globals);
  return Printer(ctx, std::move(globals)).go(term, kBinder);
}

}  // namespace hlevel
