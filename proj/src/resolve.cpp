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
#include <utility>

#include "hlevel/syntax.hpp"
#include "term_walk.hpp"

namespace hlevel {
namespace {

namespace s = surface;

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

class Resolver {
 public:
  Resolver(std::vector<std::string> locals, const GlobalScope& globals)
      : locals_(std::move(locals)), globals_(globals) {}

  std::vector<Diagnostic> diagnostics;

  TermPtr go(const s::ExprPtr& e) {
    return std::visit(
        detail::overloaded{
            [&](const s::Name& n) -> TermPtr { return name(n.id, e->span); },
            [&](const s::Universe& u) -> TermPtr { return make_term(core::Universe{u.level}); },
            [&](const s::Pi& p) -> TermPtr { return telescope<core::Pi>(p.names, p.domain, p.codomain); },
            [&](const s::Sigma& p) -> TermPtr { return telescope<core::Sigma>(p.names, p.first, p.second); },
            [&](const s::Arrow& a) -> TermPtr {
              TermPtr dom = go(a.domain);
              TermPtr cod = under({""}, a.codomain);
              return make_term(core::Pi{"_", dom, cod});
            },
            [&](const s::Product& a) -> TermPtr {
              TermPtr fst = go(a.first);
              TermPtr snd = under({""}, a.second);
              return make_term(core::Sigma{"_", fst, snd});
            },
            [&](const s::Lam& l) -> TermPtr {
              std::size_t mark = locals_.size();
              for (const auto& n : l.names) locals_.push_back(n);
              TermPtr body = go(l.body);
              locals_.resize(mark);
              for (auto it = l.names.rbegin(); it != l.names.rend(); ++it) {
                body = make_term(core::Lam{*it, body});
              }
              return body;
            },
            [&](const s::App& a) -> TermPtr { return make_term(core::App{go(a.fn), go(a.arg)}); },
            [&](const s::Pair& a) -> TermPtr { return make_term(core::Pair{go(a.first), go(a.second)}); },
            [&](const s::Fst& a) -> TermPtr { return make_term(core::Fst{go(a.pair)}); },
            [&](const s::Snd& a) -> TermPtr { return make_term(core::Snd{go(a.pair)}); },
            [&](const s::IdType& a) -> TermPtr {
              return make_term(core::IdType{go(a.type), go(a.lhs), go(a.rhs)});
            },
            [&](const s::Refl& a) -> TermPtr { return make_term(core::Refl{go(a.term)}); },
            [&](const s::J& a) -> TermPtr {
              TermPtr motive = under({a.motive_names.begin(), a.motive_names.end()}, a.motive);
              TermPtr base = under({a.base_name}, a.base);
              return make_term(core::J{a.motive_names, motive, a.base_name, base, go(a.path)});
            },
            [&](const s::NatType&) -> TermPtr { return make_term(core::NatType{}); },
            [&](const s::Zero&) -> TermPtr { return make_term(core::Zero{}); },
            [&](const s::Suc& a) -> TermPtr { return make_term(core::Suc{go(a.pred)}); },
            [&](const s::NatLit& a) -> TermPtr {
              TermPtr t = make_term(core::Zero{});
              for (std::uint64_t i = 0; i < a.value; ++i) t = make_term(core::Suc{t});
              return t;
            },
            [&](const s::NatElim& a) -> TermPtr {
              TermPtr motive = under({a.motive_name}, a.motive);
              TermPtr base = go(a.base);
              TermPtr step = under({a.step_names[0], a.step_names[1]}, a.step);
              return make_term(core::NatElim{a.motive_name, motive, base, a.step_names, step, go(a.target)});
            },
            [&](const s::EmptyType&) -> TermPtr { return make_term(core::EmptyType{}); },
            [&](const s::EmptyElim& a) -> TermPtr {
              TermPtr motive = under({a.motive_name}, a.motive);
              return make_term(core::EmptyElim{a.motive_name, motive, go(a.target)});
            },
            [&](const s::UnitType&) -> TermPtr { return make_term(core::UnitType{}); },
            [&](const s::Star&) -> TermPtr { return make_term(core::Star{}); },
            [&](const s::TwoType&) -> TermPtr { return make_term(core::TwoType{}); },
            [&](const s::ZeroTwo&) -> TermPtr { return make_term(core::ZeroTwo{}); },
            [&](const s::OneTwo&) -> TermPtr { return make_term(core::OneTwo{}); },
            [&](const s::TwoElim& a) -> TermPtr {
              TermPtr motive = under({a.motive_name}, a.motive);
              return make_term(core::TwoElim{a.motive_name, motive, go(a.case0), go(a.case1), go(a.target)});
            },
            [&](const s::Ann& a) -> TermPtr { return make_term(core::Ann{go(a.term), go(a.type)}); },
        },
        e->node);
  }

  // Binds `names` in order, each with the same domain, then `body`.
  template <typename Node>
  TermPtr telescope(const std::vector<std::string>& names, const s::ExprPtr& domain,
                    const s::ExprPtr& body) {
    TermPtr dom = go(domain);
    std::vector<TermPtr> doms;
    std::size_t mark = locals_.size();
    for (std::size_t i = 0; i < names.size(); ++i) {
      doms.push_back(shift(dom, static_cast<std::uint32_t>(i)));
      locals_.push_back(names[i]);
    }
    TermPtr result = go(body);
    locals_.resize(mark);
    for (std::size_t i = names.size(); i-- > 0;) result = make_term(Node{names[i], doms[i], result});
    return result;
  }

  TermPtr under(std::vector<std::string> names, const s::ExprPtr& e) {
    std::size_t mark = locals_.size();
    for (auto& n : names) locals_.push_back(std::move(n));
    TermPtr t = go(e);
    locals_.resize(mark);
    return t;
  }

  void push(std::string n) { locals_.push_back(std::move(n)); }

 private:
  TermPtr name(const std::string& id, Span span) {
    for (std::size_t i = locals_.size(); i-- > 0;) {
      if (locals_[i] == id) {
        return make_term(core::Var{static_cast<std::uint32_t>(locals_.size() - 1 - i)});
      }
    }
    if (globals_.contains(id)) return make_term(core::AxiomRef{id});
    std::string message = "unbound name '" + id + "'";
    if (auto best = suggest(id)) message += "; did you mean '" + *best + "'?";
    diagnostics.push_back({Severity::kError, "unbound", message, span});
    return make_term(core::AxiomRef{id});
  }

  std::optional<std::string> suggest(const std::string& id) const {
    std::optional<std::string> best;
    std::size_t best_d = std::max<std::size_t>(2, id.size() / 3) + 1;
    auto consider = [&](const std::string& cand) {
      if (cand.empty() || cand == "_") return;
      std::size_t d = edit_distance(id, cand);
      if (d < best_d) {
        best_d = d;
        best = cand;
      }
    };
    for (const auto& l : locals_) consider(l);
    for (const auto& g : globals_) consider(g);
    return best;
  }

  std::vector<std::string> locals_;
  const GlobalScope& globals_;
};

}  // namespace

DeclResolution resolve_decl(const surface::Decl& decl, const GlobalScope& globals) {
  DeclResolution out;
  Resolver r({}, globals);
  struct Bound {
    std::string name;
    TermPtr type;
  };
  std::vector<Bound> params;
  for (const auto& group : decl.params) {
    TermPtr base = r.go(group.type);
    for (std::size_t i = 0; i < group.names.size(); ++i) {
      params.push_back({group.names[i], shift(base, static_cast<std::uint32_t>(i))});
      r.push(group.names[i]);
    }
  }
  TermPtr type = r.go(decl.type);
  TermPtr body = decl.body ? r.go(decl.body) : nullptr;
  for (auto it = params.rbegin(); it != params.rend(); ++it) {
    type = make_term(core::Pi{it->name, it->type, type});
    if (body) body = make_term(core::Lam{it->name, body});
  }
  out.diagnostics = std::move(r.diagnostics);
  if (out.diagnostics.empty()) {
    out.decl = Declaration{decl.kind, decl.name, type, body, decl.provenance, decl.span};
  }
  return out;
}

ResolveResult resolve(const std::vector<surface::Decl>& decls, GlobalScope globals) {
  ResolveResult out;
  for (const auto& d : decls) {
    if (globals.contains(d.name)) {
      out.diagnostics.push_back(
          {Severity::kError, "duplicate", "duplicate top-level name '" + d.name + "'", d.name_span});
      continue;
    }
    DeclResolution r = resolve_decl(d, globals);
    for (auto& diag : r.diagnostics) out.diagnostics.push_back(std::move(diag));
    if (r.decl) {
      if (d.kind != DeclKind::kGoal) globals.insert(d.name);
      out.decls.push_back(std::move(*r.decl));
    }
  }
  return out;
}

TermResolution resolve_expr(const surface::ExprPtr& expr, const std::vector<std::string>& locals,
                            const GlobalScope& globals) {
  Resolver r(locals, globals);
  TermResolution out;
  out.term = r.go(expr);
  out.diagnostics = std::move(r.diagnostics);
  return out;
}

}  // namespace hlevel
