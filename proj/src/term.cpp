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

#include "hlevel/syntax.hpp"
#include "term_walk.hpp"

namespace hlevel {

std::string_view to_string(DeclKind kind) {
  switch (kind) {
    case DeclKind::kDef:
      return "def";
    case DeclKind::kAxiom:
      return "axiom";
    case DeclKind::kGoal:
      return "goal";
  }
  return "def";
}

namespace {

bool leaf_equal(const TermNode& a, const TermNode& b) {
  if (a.index() != b.index()) return false;
  if (auto* v = std::get_if<core::Var>(&a)) {
    return v->index == std::get<core::Var>(b).index;
  }
  if (auto* u = std::get_if<core::Universe>(&a)) {
    return u->level == std::get<core::Universe>(b).level;
  }
  if (auto* r = std::get_if<core::AxiomRef>(&a)) {
    return r->name == std::get<core::AxiomRef>(b).name;
  }
  return true;
}

TermPtr shift_at(const TermPtr& t, std::uint32_t by, std::uint32_t cutoff) {
  if (auto* v = std::get_if<core::Var>(&t->node)) {
    if (v->index >= cutoff) return make_term(core::Var{v->index + by});
    return t;
  }
  if (!detail::has_children(t->node)) return t;
  Term copy = *t;
  detail::for_each_child(copy.node, [&](TermPtr& child, std::uint32_t binders) {
    child = shift_at(child, by, cutoff + binders);
  });
  return std::make_shared<const Term>(std::move(copy));
}

bool occurs_at(const TermPtr& t, std::uint32_t index) {
  if (auto* v = std::get_if<core::Var>(&t->node)) return v->index == index;
  bool found = false;
  detail::for_each_child(t->node, [&](const TermPtr& child, std::uint32_t binders) {
    if (!found) found = occurs_at(child, index + binders);
  });
  return found;
}

}  // namespace

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (!leaf_equal(a->node, b->node)) return false;
  std::vector<const TermPtr*> left;
  std::vector<const TermPtr*> right;
  detail::for_each_child(a->node, [&](const TermPtr& c, std::uint32_t) { left.push_back(&c); });
  detail::for_each_child(b->node, [&](const TermPtr& c, std::uint32_t) { right.push_back(&c); });
  if (left.size() != right.size()) return false;
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (!alpha_equal(*left[i], *right[i])) return false;
  }
  return true;
}

TermPtr shift(const TermPtr& t, std::uint32_t by, std::uint32_t cutoff) {
  if (by == 0) return t;
  return shift_at(t, by, cutoff);
}

bool occurs_free(const TermPtr& t, std::uint32_t index) { return occurs_at(t, index); }

void collect_refs(const TermPtr& t, std::set<std::string>& out) {
  if (auto* r = std::get_if<core::AxiomRef>(&t->node)) {
    out.insert(r->name);
    return;
  }
  detail::for_each_child(t->node, [&](const TermPtr& child, std::uint32_t) {
    collect_refs(child, out);
  });
}

std::size_t term_size(const TermPtr& t) {
  std::size_t n = 1;
  detail::for_each_child(t->node, [&](const TermPtr& child, std::uint32_t) {
    n += term_size(child);
  });
  return n;
}

}  // namespace hlevel
