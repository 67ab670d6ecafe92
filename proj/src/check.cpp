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

#include "hlevel/check.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>

#include "term_walk.hpp"

namespace hlevel {

using detail::overloaded;

std::uint32_t max_level_from_env() {
  const char* s = std::getenv("HLEVEL_MAX_LEVEL");
  if (!s || !*s) return kDefaultMaxLevel;
  std::uint32_t v = 0;
  std::string_view sv(s);
  auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
  if (ec != std::errc() || ptr != sv.data() + sv.size()) return kDefaultMaxLevel;
  return v;
}

Context Context::bind(std::string name, ValuePtr type) const {
  return define(std::move(name), std::move(type), make_var(level()));
}

Context Context::define(std::string name, ValuePtr type, ValuePtr value) const {
  Context out{env.extend(std::move(value)), types, names};
  out.types.push_back(std::move(type));
  out.names.push_back(std::move(name));
  return out;
}

Checker::Checker(Globals& globals, CheckOptions opts) : g_(globals), opts_(opts) {}

Conversion Checker::conversion(const Context& ctx) const {
  return Conversion(g_, ctx.types, ConvOptions{opts_.eta_sigma});
}

bool Checker::convertible(const Context& ctx, const ValuePtr& type, const ValuePtr& a, const ValuePtr& b) {
  return conversion(ctx).equal(type, a, b);
}

bool Checker::subtype(const Context& ctx, const ValuePtr& a, const ValuePtr& b) {
  return conversion(ctx).subtype(a, b);
}

std::string Checker::show(const Context& ctx, const ValuePtr& v) const {
  return print(quote(g_, ctx.level(), v, false), ctx.names);
}

namespace {

ValuePtr universe(std::uint32_t i) { return make_value(val::Universe{Level{i}}); }

template <typename T>
const T* as(const ValuePtr& v) {
  return std::get_if<T>(&force(v)->node);
}

}  // namespace

Level Checker::infer_universe(const Context& ctx, const TermPtr& t) {
  ValuePtr ty = infer(ctx, t);
  if (auto* u = as<val::Universe>(ty)) return u->level;
  throw TypeError("not-a-type", "expected a type, but '" + print(t, ctx.names) + "' has type " + show(ctx, ty));
}

ValuePtr Checker::infer(const Context& ctx, const TermPtr& t) {
  return std::visit(
      overloaded{
          [&](const core::Var& v) -> ValuePtr {
            if (v.index >= ctx.level()) throw TypeError("scope", "variable index out of range");
            return ctx.types[ctx.level() - 1 - v.index];
          },
          [&](const core::Universe& u) -> ValuePtr {
            if (u.level.index > opts_.max_level) {
              throw TypeError("universe-bound", "universe U" + std::to_string(u.level.index) +
                                                    " exceeds the maximum level " +
                                                    std::to_string(opts_.max_level));
            }
            return universe(u.level.index + 1);
          },
          [&](const core::Pi& p) -> ValuePtr {
            Level i = infer_universe(ctx, p.domain);
            Level j = infer_universe(ctx.bind(p.name, eval(g_, ctx.env, p.domain)), p.codomain);
            return universe(std::max(i, j).index);
          },
          [&](const core::Sigma& p) -> ValuePtr {
            Level i = infer_universe(ctx, p.first);
            Level j = infer_universe(ctx.bind(p.name, eval(g_, ctx.env, p.first)), p.second);
            return universe(std::max(i, j).index);
          },
          [&](const core::Lam&) -> ValuePtr {
            throw TypeError("cannot-infer", "cannot infer the type of a function; add a type annotation");
          },
          [&](const core::App& a) -> ValuePtr {
            ValuePtr fty = infer(ctx, a.fn);
            auto* pi = as<val::Pi>(fty);
            if (!pi) {
              throw TypeError("not-a-function", "'" + print(a.fn, ctx.names) + "' has type " + show(ctx, fty) +
                                                    ", which is not a function type");
            }
            check(ctx, a.arg, pi->domain);
            return apply(g_, pi->codomain, {eval(g_, ctx.env, a.arg)});
          },
          [&](const core::Pair& p) -> ValuePtr {
            ValuePtr a = infer(ctx, p.first);
            ValuePtr b = infer(ctx, p.second);
            TermPtr bt = shift(quote(g_, ctx.level(), b, false), 1);
            return make_value(val::Sigma{"_", a, Closure{ctx.env, bt, "_"}});
          },
          [&](const core::Fst& p) -> ValuePtr {
            ValuePtr ty = infer(ctx, p.pair);
            if (auto* s = as<val::Sigma>(ty)) return s->first;
            throw TypeError("not-a-pair", "projection from '" + print(p.pair, ctx.names) + "' of type " +
                                              show(ctx, ty) + ", which is not a pair type");
          },
          [&](const core::Snd& p) -> ValuePtr {
            ValuePtr ty = infer(ctx, p.pair);
            if (auto* s = as<val::Sigma>(ty)) {
              return apply(g_, s->second, {fst(g_, eval(g_, ctx.env, p.pair))});
            }
            throw TypeError("not-a-pair", "projection from '" + print(p.pair, ctx.names) + "' of type " +
                                              show(ctx, ty) + ", which is not a pair type");
          },
          [&](const core::IdType& i) -> ValuePtr {
            Level l = infer_universe(ctx, i.type);
            ValuePtr A = eval(g_, ctx.env, i.type);
            check(ctx, i.lhs, A);
            check(ctx, i.rhs, A);
            return universe(l.index);
          },
          [&](const core::Refl& r) -> ValuePtr {
            ValuePtr A = infer(ctx, r.term);
            ValuePtr x = eval(g_, ctx.env, r.term);
            return make_value(val::IdType{A, x, x});
          },
          [&](const core::J& j) -> ValuePtr {
            ValuePtr pty = infer(ctx, j.path);
            auto* id = as<val::IdType>(pty);
            if (!id) {
              throw TypeError("not-a-path", "J eliminates '" + print(j.path, ctx.names) + "' of type " +
                                                show(ctx, pty) + ", which is not an identity type");
            }
            const ValuePtr& A = id->type;
            Context cx = ctx.bind(j.motive_names[0], A);
            ValuePtr vx = make_var(ctx.level());
            Context cxy = cx.bind(j.motive_names[1], A);
            ValuePtr vy = make_var(ctx.level() + 1);
            Context cxyp = cxy.bind(j.motive_names[2], make_value(val::IdType{A, vx, vy}));
            infer_universe(cxyp, j.motive);
            Closure motive{ctx.env, j.motive, j.motive_names[2]};
            Context cb = ctx.bind(j.base_name, A);
            ValuePtr vb = make_var(ctx.level());
            check(cb, j.base, apply(g_, motive, {vb, vb, make_value(val::Refl{vb})}));
            return apply(g_, motive, {id->lhs, id->rhs, eval(g_, ctx.env, j.path)});
          },
          [&](const core::NatType&) -> ValuePtr { return universe(0); },
          [&](const core::Zero&) -> ValuePtr { return make_value(val::NatType{}); },
          [&](const core::Suc& s) -> ValuePtr {
            ValuePtr nat = make_value(val::NatType{});
            TermPtr cur = s.pred;
            while (auto* inner = std::get_if<core::Suc>(&cur->node)) cur = inner->pred;
            check(ctx, cur, nat);
            return nat;
          },
          [&](const core::NatElim& e) -> ValuePtr {
            ValuePtr nat = make_value(val::NatType{});
            infer_universe(ctx.bind(e.motive_name, nat), e.motive);
            Closure motive{ctx.env, e.motive, e.motive_name};
            check(ctx, e.base, apply(g_, motive, {make_value(val::Zero{})}));
            Context ck = ctx.bind(e.step_names[0], nat);
            ValuePtr k = make_var(ctx.level());
            Context ckr = ck.bind(e.step_names[1], apply(g_, motive, {k}));
            check(ckr, e.step, apply(g_, motive, {make_value(val::Suc{k})}));
            check(ctx, e.target, nat);
            return apply(g_, motive, {eval(g_, ctx.env, e.target)});
          },
          [&](const core::EmptyType&) -> ValuePtr { return universe(0); },
          [&](const core::EmptyElim& e) -> ValuePtr {
            ValuePtr empty = make_value(val::EmptyType{});
            infer_universe(ctx.bind(e.motive_name, empty), e.motive);
            check(ctx, e.target, empty);
            return apply(g_, Closure{ctx.env, e.motive, e.motive_name}, {eval(g_, ctx.env, e.target)});
          },
          [&](const core::UnitType&) -> ValuePtr { return universe(0); },
          [&](const core::Star&) -> ValuePtr { return make_value(val::UnitType{}); },
          [&](const core::TwoType&) -> ValuePtr { return universe(0); },
          [&](const core::ZeroTwo&) -> ValuePtr { return make_value(val::TwoType{}); },
          [&](const core::OneTwo&) -> ValuePtr { return make_value(val::TwoType{}); },
          [&](const core::TwoElim& e) -> ValuePtr {
            ValuePtr two = make_value(val::TwoType{});
            infer_universe(ctx.bind(e.motive_name, two), e.motive);
            Closure motive{ctx.env, e.motive, e.motive_name};
            check(ctx, e.case0, apply(g_, motive, {make_value(val::ZeroTwo{})}));
            check(ctx, e.case1, apply(g_, motive, {make_value(val::OneTwo{})}));
            check(ctx, e.target, two);
            return apply(g_, motive, {eval(g_, ctx.env, e.target)});
          },
          [&](const core::AxiomRef& r) -> ValuePtr {
            const GlobalEntry* e = g_.find(r.name);
            if (!e) throw TypeError("unbound", "unknown constant '" + r.name + "'");
            return e->type;
          },
          [&](const core::Ann& a) -> ValuePtr {
            infer_universe(ctx, a.type);
            ValuePtr ty = eval(g_, ctx.env, a.type);
            check(ctx, a.term, ty);
            return ty;
          },
      },
      t->node);
}

void Checker::check(const Context& ctx, const TermPtr& t, const ValuePtr& type) {
  if (auto* lam = std::get_if<core::Lam>(&t->node)) {
    ValuePtr ty = force(type);
    auto* pi = std::get_if<val::Pi>(&ty->node);
    if (!pi) {
      throw TypeError("mismatch", "a function '" + print(t, ctx.names) + "' cannot have type " + show(ctx, type));
    }
    Context inner = ctx.bind(lam->name, pi->domain);
    check(inner, lam->body, apply(g_, pi->codomain, {make_var(ctx.level())}));
    return;
  }
  if (auto* pair = std::get_if<core::Pair>(&t->node)) {
    ValuePtr ty = force(type);
    if (auto* sg = std::get_if<val::Sigma>(&ty->node)) {
      check(ctx, pair->first, sg->first);
      check(ctx, pair->second, apply(g_, sg->second, {eval(g_, ctx.env, pair->first)}));
      return;
    }
    throw TypeError("mismatch", "a pair '" + print(t, ctx.names) + "' cannot have type " + show(ctx, type));
  }
  if (auto* refl = std::get_if<core::Refl>(&t->node)) {
    ValuePtr ty = force(type);
    if (auto* id = std::get_if<val::IdType>(&ty->node)) {
      check(ctx, refl->term, id->type);
      ValuePtr x = eval(g_, ctx.env, refl->term);
      Conversion conv = conversion(ctx);
      if (!conv.equal(id->type, x, id->lhs) || !conv.equal(id->type, x, id->rhs)) {
        throw TypeError("endpoint-mismatch", "refl " + show(ctx, x) + " does not have type " + show(ctx, type) +
                                        ": the endpoints are not definitionally equal");
      }
      return;
    }
  }
  ValuePtr inferred = infer(ctx, t);
  if (!subtype(ctx, inferred, type)) {
    throw TypeError("mismatch", "'" + print(t, ctx.names) + "' has type " + show(ctx, inferred) +
                                    " but is expected to have type " + show(ctx, type));
  }
}

void Checker::check_declaration(const Declaration& decl) {
  if (g_.find(decl.name)) throw TypeError("duplicate", "duplicate top-level name '" + decl.name + "'");
  Context empty;
  infer_universe(empty, decl.type);
  ValuePtr type = eval(g_, Env{}, decl.type);
  if (decl.kind == DeclKind::kAxiom) {
    g_.add_axiom(decl, type);
    return;
  }
  if (!decl.body) throw TypeError("missing-body", "'" + decl.name + "' has no body");
  check(empty, decl.body, type);
  if (decl.kind == DeclKind::kDef) g_.add_def(decl, type, eval(g_, Env{}, decl.body));
}

std::size_t ModuleReport::accepted() const {
  return static_cast<std::size_t>(
      std::count_if(decls.begin(), decls.end(), [](const DeclReport& d) { return d.status == DeclStatus::kAccepted; }));
}

std::size_t ModuleReport::rejected() const { return decls.size() - accepted(); }

std::string_view base_name(std::string_view name) {
  return name.substr(0, name.find('@'));
}

ModuleReport check_module(Globals& globals, std::string_view source, std::string file, const CheckOptions& opts) {
  using Clock = std::chrono::steady_clock;
  auto module_start = Clock::now();
  ModuleReport report;
  report.file = std::move(file);
  ParseResult parsed = parse(source);
  report.diagnostics = parsed.diagnostics;
  GlobalScope scope = globals.scope();
  Checker checker(globals, opts);
  for (const auto& sdecl : parsed.decls) {
    if (sdecl.kind == DeclKind::kAxiom && opts.omit_axioms.contains(base_name(sdecl.name))) continue;
    auto start = Clock::now();
    DeclReport r;
    r.name = sdecl.name;
    r.kind = sdecl.kind;
    r.provenance = sdecl.provenance;
    if (scope.contains(sdecl.name)) {
      r.diagnostics.push_back(
          {Severity::kError, "duplicate", "duplicate top-level name '" + sdecl.name + "'", sdecl.name_span});
    } else {
      DeclResolution res = resolve_decl(sdecl, scope);
      r.diagnostics = std::move(res.diagnostics);
      if (res.decl) {
        try {
          checker.check_declaration(*res.decl);
          r.status = DeclStatus::kAccepted;
          if (sdecl.kind != DeclKind::kGoal) scope.insert(sdecl.name);
        } catch (const TypeError& e) {
          r.diagnostics.push_back({Severity::kError, e.code(), e.what(), sdecl.span});
        }
      }
    }
    r.ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    report.decls.push_back(std::move(r));
  }
  report.ms = std::chrono::duration<double, std::milli>(Clock::now() - module_start).count();
  return report;
}

}  // namespace hlevel
