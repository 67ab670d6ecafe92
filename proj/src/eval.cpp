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

#include <stdexcept>

#include "hlevel/eval.hpp"
#include "term_walk.hpp"

namespace hlevel {

using detail::overloaded;

Env Env::extend(ValuePtr v) const {
  Env out;
  out.head_ = std::make_shared<const Cell>(Cell{std::move(v), head_});
  out.size_ = size_ + 1;
  return out;
}

const ValuePtr& Env::lookup(std::uint32_t index) const {
  const Cell* c = head_.get();
  for (std::uint32_t i = 0; i < index && c; ++i) c = c->next.get();
  if (!c) throw std::out_of_range("variable index outside environment");
  return c->value;
}

ValuePtr make_var(std::uint32_t level) {
  return make_value(val::Neutral{val::VarHead{level}, {}, nullptr});
}

const GlobalEntry* Globals::find(std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

const GlobalEntry& Globals::add_axiom(Declaration decl, ValuePtr type) {
  std::string name = decl.name;
  GlobalEntry e{std::move(decl), std::move(type), nullptr, nullptr};
  e.ref = make_value(val::Neutral{val::ConstHead{name}, {}, nullptr});
  return entries_.insert_or_assign(name, std::move(e)).first->second;
}

const GlobalEntry& Globals::add_def(Declaration decl, ValuePtr type, ValuePtr value) {
  std::string name = decl.name;
  auto unfold = std::make_shared<val::Unfold>();
  unfold->globals = this;
  unfold->cached = value;
  std::call_once(unfold->once, [] {});
  GlobalEntry e{std::move(decl), std::move(type), std::move(value), nullptr};
  e.ref = make_value(val::Neutral{val::ConstHead{name}, {}, std::move(unfold)});
  return entries_.insert_or_assign(name, std::move(e)).first->second;
}

GlobalScope Globals::scope() const {
  GlobalScope out;
  for (const auto& [name, e] : entries_) out.insert(name);
  return out;
}

ValuePtr eval(const Globals& g, const Env& env, const TermPtr& t) {
  return std::visit(
      overloaded{
          [&](const core::Var& v) -> ValuePtr { return env.lookup(v.index); },
          [&](const core::Universe& u) -> ValuePtr { return make_value(val::Universe{u.level}); },
          [&](const core::Pi& p) -> ValuePtr {
            return make_value(val::Pi{p.name, eval(g, env, p.domain), Closure{env, p.codomain, p.name}});
          },
          [&](const core::Lam& l) -> ValuePtr { return make_value(val::Lam{Closure{env, l.body, l.name}}); },
          [&](const core::App& a) -> ValuePtr { return app(g, eval(g, env, a.fn), eval(g, env, a.arg)); },
          [&](const core::Sigma& s) -> ValuePtr {
            return make_value(val::Sigma{s.name, eval(g, env, s.first), Closure{env, s.second, s.name}});
          },
          [&](const core::Pair& p) -> ValuePtr {
            return make_value(val::Pair{eval(g, env, p.first), eval(g, env, p.second)});
          },
          [&](const core::Fst& p) -> ValuePtr { return fst(g, eval(g, env, p.pair)); },
          [&](const core::Snd& p) -> ValuePtr { return snd(g, eval(g, env, p.pair)); },
          [&](const core::IdType& i) -> ValuePtr {
            return make_value(val::IdType{eval(g, env, i.type), eval(g, env, i.lhs), eval(g, env, i.rhs)});
          },
          [&](const core::Refl& r) -> ValuePtr { return make_value(val::Refl{eval(g, env, r.term)}); },
          [&](const core::J& j) -> ValuePtr {
            return elim(g, eval(g, env, j.path),
                        val::FJ{j.motive_names, Closure{env, j.motive, j.motive_names[2]},
                                Closure{env, j.base, j.base_name}});
          },
          [&](const core::NatType&) -> ValuePtr { return make_value(val::NatType{}); },
          [&](const core::Zero&) -> ValuePtr { return make_value(val::Zero{}); },
          [&](const core::Suc& s) -> ValuePtr { return make_value(val::Suc{eval(g, env, s.pred)}); },
          [&](const core::NatElim& e) -> ValuePtr {
            return elim(g, eval(g, env, e.target),
                        val::FNatElim{Closure{env, e.motive, e.motive_name}, eval(g, env, e.base),
                                      Closure{env, e.step, e.step_names[1]}});
          },
          [&](const core::EmptyType&) -> ValuePtr { return make_value(val::EmptyType{}); },
          [&](const core::EmptyElim& e) -> ValuePtr {
            return elim(g, eval(g, env, e.target), val::FEmptyElim{Closure{env, e.motive, e.motive_name}});
          },
          [&](const core::UnitType&) -> ValuePtr { return make_value(val::UnitType{}); },
          [&](const core::Star&) -> ValuePtr { return make_value(val::Star{}); },
          [&](const core::TwoType&) -> ValuePtr { return make_value(val::TwoType{}); },
          [&](const core::ZeroTwo&) -> ValuePtr { return make_value(val::ZeroTwo{}); },
          [&](const core::OneTwo&) -> ValuePtr { return make_value(val::OneTwo{}); },
          [&](const core::TwoElim& e) -> ValuePtr {
            return elim(g, eval(g, env, e.target),
                        val::FTwoElim{Closure{env, e.motive, e.motive_name}, eval(g, env, e.case0),
                                      eval(g, env, e.case1)});
          },
          [&](const core::AxiomRef& r) -> ValuePtr {
            const GlobalEntry* e = g.find(r.name);
            if (!e) throw std::logic_error("reference to unchecked constant '" + r.name + "'");
            return e->ref;
          },
          [&](const core::Ann& a) -> ValuePtr { return eval(g, env, a.term); },
      },
      t->node);
}

ValuePtr apply(const Globals& g, const Closure& c, std::initializer_list<ValuePtr> args) {
  Env env = c.env;
  for (const auto& a : args) env = env.extend(a);
  return eval(g, env, c.body);
}

namespace {

ValuePtr unfolded(const val::Unfold& u) {
  std::call_once(u.once, [&] { u.cached = elim(*u.globals, force(u.parent), u.frame); });
  return u.cached;
}

}  // namespace

ValuePtr force(const ValuePtr& v) {
  ValuePtr cur = v;
  for (;;) {
    auto* n = std::get_if<val::Neutral>(&cur->node);
    if (!n || !n->unfold) return cur;
    cur = unfolded(*n->unfold);
  }
}

ValuePtr elim(const Globals& g, const ValuePtr& v, val::Frame frame) {
  if (auto* n = std::get_if<val::Neutral>(&v->node)) {
    val::Neutral out{n->head, n->spine, nullptr};
    out.spine.push_back(frame);
    if (n->unfold) {
      auto u = std::make_shared<val::Unfold>();
      u->globals = &g;
      u->parent = v;
      u->frame = std::move(frame);
      out.unfold = std::move(u);
    }
    return make_value(std::move(out));
  }
  return std::visit(
      overloaded{
          [&](const val::FApp& f) -> ValuePtr {
            if (auto* l = std::get_if<val::Lam>(&v->node)) return apply(g, l->body, {f.arg});
            throw std::logic_error("application of a non-function");
          },
          [&](const val::FFst&) -> ValuePtr {
            if (auto* p = std::get_if<val::Pair>(&v->node)) return p->first;
            throw std::logic_error("first projection of a non-pair");
          },
          [&](const val::FSnd&) -> ValuePtr {
            if (auto* p = std::get_if<val::Pair>(&v->node)) return p->second;
            throw std::logic_error("second projection of a non-pair");
          },
          [&](const val::FJ& f) -> ValuePtr {
            if (auto* r = std::get_if<val::Refl>(&v->node)) return apply(g, f.base, {r->term});
            throw std::logic_error("J on a non-path");
          },
          [&](const val::FNatElim& f) -> ValuePtr {
            if (std::holds_alternative<val::Zero>(v->node)) return f.base;
            if (auto* s = std::get_if<val::Suc>(&v->node)) {
              ValuePtr rec = elim(g, s->pred, f);
              return apply(g, f.step, {s->pred, rec});
            }
            throw std::logic_error("natElim on a non-numeral");
          },
          [&](const val::FTwoElim& f) -> ValuePtr {
            if (std::holds_alternative<val::ZeroTwo>(v->node)) return f.case0;
            if (std::holds_alternative<val::OneTwo>(v->node)) return f.case1;
            throw std::logic_error("twoElim on a non-boolean");
          },
          [&](const val::FEmptyElim&) -> ValuePtr { throw std::logic_error("emptyElim on a canonical value"); },
      },
      frame);
}

ValuePtr app(const Globals& g, const ValuePtr& f, const ValuePtr& a) { return elim(g, f, val::FApp{a}); }
ValuePtr fst(const Globals& g, const ValuePtr& v) { return elim(g, v, val::FFst{}); }
ValuePtr snd(const Globals& g, const ValuePtr& v) { return elim(g, v, val::FSnd{}); }

namespace {

class Quoter {
 public:
  Quoter(const Globals& g, bool unfold) : g_(g), unfold_(unfold) {}

  TermPtr go(std::uint32_t lvl, const ValuePtr& v0) {
    ValuePtr v = unfold_ ? force(v0) : v0;
    return std::visit(
        overloaded{
            [&](const val::Universe& u) -> TermPtr { return make_term(core::Universe{u.level}); },
            [&](const val::Pi& p) -> TermPtr {
              return make_term(core::Pi{p.name, go(lvl, p.domain), body(lvl, p.codomain, 1)});
            },
            [&](const val::Lam& l) -> TermPtr { return make_term(core::Lam{l.body.name, body(lvl, l.body, 1)}); },
            [&](const val::Sigma& s) -> TermPtr {
              return make_term(core::Sigma{s.name, go(lvl, s.first), body(lvl, s.second, 1)});
            },
            [&](const val::Pair& p) -> TermPtr {
              return make_term(core::Pair{go(lvl, p.first), go(lvl, p.second)});
            },
            [&](const val::IdType& i) -> TermPtr {
              return make_term(core::IdType{go(lvl, i.type), go(lvl, i.lhs), go(lvl, i.rhs)});
            },
            [&](const val::Refl& r) -> TermPtr { return make_term(core::Refl{go(lvl, r.term)}); },
            [&](const val::NatType&) -> TermPtr { return make_term(core::NatType{}); },
            [&](const val::Zero&) -> TermPtr { return make_term(core::Zero{}); },
            [&](const val::Suc&) -> TermPtr {
              std::size_t n = 0;
              ValuePtr cur = v;
              while (auto* s = std::get_if<val::Suc>(&cur->node)) {
                ++n;
                cur = unfold_ ? force(s->pred) : s->pred;
              }
              TermPtr t = go(lvl, cur);
              for (std::size_t i = 0; i < n; ++i) t = make_term(core::Suc{t});
              return t;
            },
            [&](const val::EmptyType&) -> TermPtr { return make_term(core::EmptyType{}); },
            [&](const val::UnitType&) -> TermPtr { return make_term(core::UnitType{}); },
            [&](const val::Star&) -> TermPtr { return make_term(core::Star{}); },
            [&](const val::TwoType&) -> TermPtr { return make_term(core::TwoType{}); },
            [&](const val::ZeroTwo&) -> TermPtr { return make_term(core::ZeroTwo{}); },
            [&](const val::OneTwo&) -> TermPtr { return make_term(core::OneTwo{}); },
            [&](const val::Neutral& n) -> TermPtr { return neutral(lvl, n); },
        },
        v->node);
  }

 private:
  TermPtr body(std::uint32_t lvl, const Closure& c, std::uint32_t arity) {
    Env env = c.env;
    for (std::uint32_t i = 0; i < arity; ++i) env = env.extend(make_var(lvl + i));
    return go(lvl + arity, eval(g_, env, c.body));
  }

  TermPtr neutral(std::uint32_t lvl, const val::Neutral& n) {
    TermPtr t = std::visit(
        overloaded{
            [&](const val::VarHead& h) -> TermPtr { return make_term(core::Var{lvl - 1 - h.level}); },
            [&](const val::ConstHead& h) -> TermPtr { return make_term(core::AxiomRef{h.name}); },
        },
        n.head);
    for (const auto& f : n.spine) {
      t = std::visit(
          overloaded{
              [&](const val::FApp& a) -> TermPtr { return make_term(core::App{t, go(lvl, a.arg)}); },
              [&](const val::FFst&) -> TermPtr { return make_term(core::Fst{t}); },
              [&](const val::FSnd&) -> TermPtr { return make_term(core::Snd{t}); },
              [&](const val::FJ& j) -> TermPtr {
                return make_term(core::J{j.motive_names, body(lvl, j.motive, 3), j.base.name,
                                         body(lvl, j.base, 1), t});
              },
              [&](const val::FNatElim& e) -> TermPtr {
                return make_term(core::NatElim{e.motive.name, body(lvl, e.motive, 1), go(lvl, e.base),
                                               {"k", e.step.name}, body(lvl, e.step, 2), t});
              },
              [&](const val::FTwoElim& e) -> TermPtr {
                return make_term(core::TwoElim{e.motive.name, body(lvl, e.motive, 1), go(lvl, e.case0),
                                               go(lvl, e.case1), t});
              },
              [&](const val::FEmptyElim& e) -> TermPtr {
                return make_term(core::EmptyElim{e.motive.name, body(lvl, e.motive, 1), t});
              },
          },
          f);
    }
    return t;
  }

  const Globals& g_;
  bool unfold_;
};

}  // namespace

TermPtr quote(const Globals& g, std::uint32_t level, const ValuePtr& v, bool unfold) {
  return Quoter(g, unfold).go(level, v);
}

TermPtr normalize(const Globals& g, const TermPtr& t) { return quote(g, 0, eval(g, Env{}, t), true); }

// ---------------------------------------------------------------------------
// Conversion.

Conversion::Conversion(const Globals& g, std::vector<ValuePtr> var_types, ConvOptions opts)
    : g_(g), types_(std::move(var_types)), opts_(opts) {}

ValuePtr Conversion::fresh(const ValuePtr& type) {
  ValuePtr v = make_var(static_cast<std::uint32_t>(types_.size()));
  types_.push_back(type);
  return v;
}

void Conversion::pop() { types_.pop_back(); }

ValuePtr Conversion::head_type(const val::Head& h) const {
  if (auto* v = std::get_if<val::VarHead>(&h)) {
    return v->level < types_.size() ? types_[v->level] : nullptr;
  }
  const GlobalEntry* e = g_.find(std::get<val::ConstHead>(h).name);
  return e ? e->type : nullptr;
}

namespace {

bool same_head(const val::Head& a, const val::Head& b) {
  if (a.index() != b.index()) return false;
  if (auto* x = std::get_if<val::VarHead>(&a)) return x->level == std::get<val::VarHead>(b).level;
  return std::get<val::ConstHead>(a).name == std::get<val::ConstHead>(b).name;
}

struct Scope {
  std::vector<ValuePtr>& types;
  std::size_t mark;
  explicit Scope(std::vector<ValuePtr>& t) : types(t), mark(t.size()) {}
  ~Scope() { types.resize(mark); }
};

}  // namespace

bool Conversion::equal_closures(const Closure& a, const Closure& b, std::vector<ValuePtr> types,
                                const ValuePtr& body_type, bool as_types) {
  Scope scope(types_);
  std::vector<ValuePtr> vars;
  for (const auto& t : types) vars.push_back(fresh(t));
  Env ea = a.env;
  Env eb = b.env;
  for (const auto& v : vars) {
    ea = ea.extend(v);
    eb = eb.extend(v);
  }
  ValuePtr va = eval(g_, ea, a.body);
  ValuePtr vb = eval(g_, eb, b.body);
  return as_types ? equal_types(va, vb) : equal(body_type, va, vb);
}

bool Conversion::equal_neutral(const val::Neutral& a, const val::Neutral& b, ValuePtr* out_type) {
  if (!same_head(a.head, b.head) || a.spine.size() != b.spine.size()) return false;
  ValuePtr ty = head_type(a.head);
  // Rebuild the neutral prefix as we go; some frames' types depend on it.
  ValuePtr prefix = make_value(val::Neutral{a.head, {}, nullptr});
  for (std::size_t i = 0; i < a.spine.size(); ++i) {
    const val::Frame& fa = a.spine[i];
    const val::Frame& fb = b.spine[i];
    if (fa.index() != fb.index()) return false;
    ValuePtr fty = ty ? force(ty) : nullptr;
    ValuePtr next_ty;
    bool ok = std::visit(
        overloaded{
            [&](const val::FApp& x) -> bool {
              const auto& y = std::get<val::FApp>(fb);
              const val::Pi* pi = fty ? std::get_if<val::Pi>(&fty->node) : nullptr;
              if (!equal(pi ? pi->domain : nullptr, x.arg, y.arg)) return false;
              if (pi) next_ty = apply(g_, pi->codomain, {x.arg});
              return true;
            },
            [&](const val::FFst&) -> bool {
              if (auto* s = fty ? std::get_if<val::Sigma>(&fty->node) : nullptr) next_ty = s->first;
              return true;
            },
            [&](const val::FSnd&) -> bool {
              if (auto* s = fty ? std::get_if<val::Sigma>(&fty->node) : nullptr) {
                next_ty = apply(g_, s->second, {fst(g_, prefix)});
              }
              return true;
            },
            [&](const val::FJ& x) -> bool {
              const auto& y = std::get<val::FJ>(fb);
              const val::IdType* id = fty ? std::get_if<val::IdType>(&fty->node) : nullptr;
              ValuePtr A = id ? id->type : nullptr;
              {
                Scope scope(types_);
                ValuePtr vx = fresh(A);
                ValuePtr vy = fresh(A);
                ValuePtr vp = fresh(A ? make_value(val::IdType{A, vx, vy}) : nullptr);
                if (!equal_types(apply(g_, x.motive, {vx, vy, vp}), apply(g_, y.motive, {vx, vy, vp}))) {
                  return false;
                }
              }
              {
                Scope scope(types_);
                ValuePtr vx = fresh(A);
                ValuePtr want = apply(g_, x.motive, {vx, vx, make_value(val::Refl{vx})});
                if (!equal(want, apply(g_, x.base, {vx}), apply(g_, y.base, {vx}))) return false;
              }
              if (id) next_ty = apply(g_, x.motive, {id->lhs, id->rhs, prefix});
              return true;
            },
            [&](const val::FNatElim& x) -> bool {
              const auto& y = std::get<val::FNatElim>(fb);
              ValuePtr nat = make_value(val::NatType{});
              if (!equal_closures(x.motive, y.motive, {nat}, nullptr, true)) return false;
              if (!equal(apply(g_, x.motive, {make_value(val::Zero{})}), x.base, y.base)) return false;
              {
                Scope scope(types_);
                ValuePtr k = fresh(nat);
                ValuePtr r = fresh(apply(g_, x.motive, {k}));
                ValuePtr want = apply(g_, x.motive, {make_value(val::Suc{k})});
                if (!equal(want, apply(g_, x.step, {k, r}), apply(g_, y.step, {k, r}))) return false;
              }
              next_ty = apply(g_, x.motive, {prefix});
              return true;
            },
            [&](const val::FTwoElim& x) -> bool {
              const auto& y = std::get<val::FTwoElim>(fb);
              if (!equal_closures(x.motive, y.motive, {make_value(val::TwoType{})}, nullptr, true)) return false;
              if (!equal(apply(g_, x.motive, {make_value(val::ZeroTwo{})}), x.case0, y.case0)) return false;
              if (!equal(apply(g_, x.motive, {make_value(val::OneTwo{})}), x.case1, y.case1)) return false;
              next_ty = apply(g_, x.motive, {prefix});
              return true;
            },
            [&](const val::FEmptyElim& x) -> bool {
              const auto& y = std::get<val::FEmptyElim>(fb);
              if (!equal_closures(x.motive, y.motive, {make_value(val::EmptyType{})}, nullptr, true)) {
                return false;
              }
              next_ty = apply(g_, x.motive, {prefix});
              return true;
            },
        },
        fa);
    if (!ok) return false;
    ty = next_ty;
    auto* pn = std::get_if<val::Neutral>(&prefix->node);
    val::Neutral grown{pn->head, pn->spine, nullptr};
    grown.spine.push_back(fa);
    prefix = make_value(std::move(grown));
  }
  if (out_type) *out_type = ty;
  return true;
}

bool Conversion::equal(const ValuePtr& type, const ValuePtr& a0, const ValuePtr& b0) {
  if (a0 == b0) return true;
  // Same definition applied to convertible spines: no need to unfold.
  auto* ga = std::get_if<val::Neutral>(&a0->node);
  auto* gb = std::get_if<val::Neutral>(&b0->node);
  if (ga && gb && ga->unfold && gb->unfold && same_head(ga->head, gb->head) &&
      ga->spine.size() == gb->spine.size()) {
    if (equal_neutral(*ga, *gb, nullptr)) return true;
  }
  ValuePtr a = force(a0);
  ValuePtr b = force(b0);
  if (a == b) return true;
  ValuePtr ty = type ? force(type) : nullptr;

  if (ty) {
    if (auto* pi = std::get_if<val::Pi>(&ty->node)) {
      Scope scope(types_);
      ValuePtr x = fresh(pi->domain);
      return equal(apply(g_, pi->codomain, {x}), app(g_, a, x), app(g_, b, x));
    }
    if (auto* sg = std::get_if<val::Sigma>(&ty->node)) {
      bool pa = std::holds_alternative<val::Pair>(a->node);
      bool pb = std::holds_alternative<val::Pair>(b->node);
      if (opts_.eta_sigma || (pa && pb)) {
        ValuePtr a1 = fst(g_, a);
        if (!equal(sg->first, a1, fst(g_, b))) return false;
        return equal(apply(g_, sg->second, {a1}), snd(g_, a), snd(g_, b));
      }
    }
    if (std::holds_alternative<val::UnitType>(ty->node)) return true;
    if (std::holds_alternative<val::Universe>(ty->node)) return equal_types(a, b);
    if (auto* id = std::get_if<val::IdType>(&ty->node)) {
      auto* ra = std::get_if<val::Refl>(&a->node);
      auto* rb = std::get_if<val::Refl>(&b->node);
      if (ra && rb) return equal(id->type, ra->term, rb->term);
    }
  }

  // Untyped structural comparison, with eta for functions and pairs.
  auto* la = std::get_if<val::Lam>(&a->node);
  auto* lb = std::get_if<val::Lam>(&b->node);
  if (la || lb) {
    Scope scope(types_);
    ValuePtr x = fresh(nullptr);
    return equal(nullptr, app(g_, a, x), app(g_, b, x));
  }
  auto* pa = std::get_if<val::Pair>(&a->node);
  auto* pb = std::get_if<val::Pair>(&b->node);
  if (pa && pb) return equal(nullptr, pa->first, pb->first) && equal(nullptr, pa->second, pb->second);
  if ((pa || pb) && opts_.eta_sigma) {
    return equal(nullptr, fst(g_, a), fst(g_, b)) && equal(nullptr, snd(g_, a), snd(g_, b));
  }
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const val::Neutral& x) -> bool { return equal_neutral(x, std::get<val::Neutral>(b->node), nullptr); },
          [&](const val::Refl& x) -> bool { return equal(nullptr, x.term, std::get<val::Refl>(b->node).term); },
          [&](const val::Suc&) -> bool {
            ValuePtr x = a;
            ValuePtr y = b;
            while (std::holds_alternative<val::Suc>(x->node) && std::holds_alternative<val::Suc>(y->node)) {
              x = force(std::get<val::Suc>(x->node).pred);
              y = force(std::get<val::Suc>(y->node).pred);
            }
            return equal(make_value(val::NatType{}), x, y);
          },
          [&](const auto&) -> bool { return equal_types(a, b); },
      },
      a->node);
}

bool Conversion::equal_types(const ValuePtr& a0, const ValuePtr& b0) {
  if (a0 == b0) return true;
  auto* ga = std::get_if<val::Neutral>(&a0->node);
  auto* gb = std::get_if<val::Neutral>(&b0->node);
  if (ga && gb && ga->unfold && gb->unfold && same_head(ga->head, gb->head) &&
      ga->spine.size() == gb->spine.size()) {
    if (equal_neutral(*ga, *gb, nullptr)) return true;
  }
  ValuePtr a = force(a0);
  ValuePtr b = force(b0);
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const val::Universe& x) -> bool { return x.level == std::get<val::Universe>(b->node).level; },
          [&](const val::Pi& x) -> bool {
            const auto& y = std::get<val::Pi>(b->node);
            return equal_types(x.domain, y.domain) &&
                   equal_closures(x.codomain, y.codomain, {x.domain}, nullptr, true);
          },
          [&](const val::Sigma& x) -> bool {
            const auto& y = std::get<val::Sigma>(b->node);
            return equal_types(x.first, y.first) &&
                   equal_closures(x.second, y.second, {x.first}, nullptr, true);
          },
          [&](const val::IdType& x) -> bool {
            const auto& y = std::get<val::IdType>(b->node);
            return equal_types(x.type, y.type) && equal(x.type, x.lhs, y.lhs) && equal(x.type, x.rhs, y.rhs);
          },
          [&](const val::Neutral& x) -> bool { return equal_neutral(x, std::get<val::Neutral>(b->node), nullptr); },
          [&](const val::NatType&) -> bool { return true; },
          [&](const val::EmptyType&) -> bool { return true; },
          [&](const val::UnitType&) -> bool { return true; },
          [&](const val::TwoType&) -> bool { return true; },
          [&](const val::Zero&) -> bool { return true; },
          [&](const val::Star&) -> bool { return true; },
          [&](const val::ZeroTwo&) -> bool { return true; },
          [&](const val::OneTwo&) -> bool { return true; },
          [&](const auto&) -> bool { return equal(nullptr, a, b); },
      },
      a->node);
}

bool Conversion::subtype(const ValuePtr& a0, const ValuePtr& b0) {
  if (a0 == b0) return true;
  ValuePtr a = force(a0);
  ValuePtr b = force(b0);
  if (auto* ua = std::get_if<val::Universe>(&a->node)) {
    if (auto* ub = std::get_if<val::Universe>(&b->node)) return ua->level <= ub->level;
    return false;
  }
  if (auto* pa = std::get_if<val::Pi>(&a->node)) {
    auto* pb = std::get_if<val::Pi>(&b->node);
    if (!pb || !equal_types(pa->domain, pb->domain)) return false;
    Scope scope(types_);
    ValuePtr x = fresh(pa->domain);
    return subtype(apply(g_, pa->codomain, {x}), apply(g_, pb->codomain, {x}));
  }
  if (auto* sa = std::get_if<val::Sigma>(&a->node)) {
    auto* sb = std::get_if<val::Sigma>(&b->node);
    if (!sb || !subtype(sa->first, sb->first)) return false;
    Scope scope(types_);
    ValuePtr x = fresh(sa->first);
    return subtype(apply(g_, sa->second, {x}), apply(g_, sb->second, {x}));
  }
  return equal_types(a0, b0);
}

}  // namespace hlevel
