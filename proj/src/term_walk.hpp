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

#ifndef HLEVEL_SRC_TERM_WALK_HPP_
#define HLEVEL_SRC_TERM_WALK_HPP_

#include <type_traits>
#include <variant>

#include "hlevel/syntax.hpp"

namespace hlevel::detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Calls f(child, binders) for every direct subterm, in a fixed order, where
// `binders` is the number of variables the subterm sits under relative to
// the node. Works on const and mutable nodes.
template <class Node, class F>
void for_each_child(Node& node, F&& f) {
  std::visit(
      [&](auto& n) {
        using T = std::remove_cvref_t<decltype(n)>;
        if constexpr (std::is_same_v<T, core::Pi> || std::is_same_v<T, core::Sigma>) {
          if constexpr (std::is_same_v<T, core::Pi>) {
            f(n.domain, 0);
            f(n.codomain, 1);
          } else {
            f(n.first, 0);
            f(n.second, 1);
          }
        } else if constexpr (std::is_same_v<T, core::Lam>) {
          f(n.body, 1);
        } else if constexpr (std::is_same_v<T, core::App>) {
          f(n.fn, 0);
          f(n.arg, 0);
        } else if constexpr (std::is_same_v<T, core::Pair>) {
          f(n.first, 0);
          f(n.second, 0);
        } else if constexpr (std::is_same_v<T, core::Fst> || std::is_same_v<T, core::Snd>) {
          f(n.pair, 0);
        } else if constexpr (std::is_same_v<T, core::IdType>) {
          f(n.type, 0);
          f(n.lhs, 0);
          f(n.rhs, 0);
        } else if constexpr (std::is_same_v<T, core::Refl>) {
          f(n.term, 0);
        } else if constexpr (std::is_same_v<T, core::J>) {
          f(n.motive, 3);
          f(n.base, 1);
          f(n.path, 0);
        } else if constexpr (std::is_same_v<T, core::Suc>) {
          f(n.pred, 0);
        } else if constexpr (std::is_same_v<T, core::NatElim>) {
          f(n.motive, 1);
          f(n.base, 0);
          f(n.step, 2);
          f(n.target, 0);
        } else if constexpr (std::is_same_v<T, core::EmptyElim>) {
          f(n.motive, 1);
          f(n.target, 0);
        } else if constexpr (std::is_same_v<T, core::TwoElim>) {
          f(n.motive, 1);
          f(n.case0, 0);
          f(n.case1, 0);
          f(n.target, 0);
        } else if constexpr (std::is_same_v<T, core::Ann>) {
          f(n.term, 0);
          f(n.type, 0);
        }
      },
      node);
}

inline bool has_children(const TermNode& node) {
  bool any = false;
  for_each_child(node, [&](const TermPtr&, std::uint32_t) { any = true; });
  return any;
}

}  // namespace hlevel::detail

#endif  // HLEVEL_SRC_TERM_WALK_HPP_
