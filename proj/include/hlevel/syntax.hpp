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

// Surface and core syntax of the kernel language, plus the parser,
// scope resolver and pretty-printer that move between them.

#ifndef HLEVEL_SYNTAX_HPP_
#define HLEVEL_SYNTAX_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hlevel {

inline constexpr std::uint32_t kDefaultMaxLevel = 8;

/// Universe index. U0 : U1 : U2 : ...
struct Level {
  std::uint32_t index = 0;
  auto operator<=>(const Level&) const = default;
};

/// Half-open byte range [begin, end) into a source buffer.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
};

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string code;
  std::string message;
  Span span;
};

// ---------------------------------------------------------------------------
// Core terms (de Bruijn indexed). Binder names are printing hints only and
// never participate in equality.

struct Term;
using TermPtr = std::shared_ptr<const Term>;

namespace core {
struct Var { std::uint32_t index; };
struct Universe { Level level; };
struct Pi { std::string name; TermPtr domain; TermPtr codomain; };
struct Lam { std::string name; TermPtr body; };
struct App { TermPtr fn; TermPtr arg; };
struct Sigma { std::string name; TermPtr first; TermPtr second; };
struct Pair { TermPtr first; TermPtr second; };
struct Fst { TermPtr pair; };
struct Snd { TermPtr pair; };
struct IdType { TermPtr type; TermPtr lhs; TermPtr rhs; };
struct Refl { TermPtr term; };
// Motive binds (x, y, p) with p : Id A x y; base binds x.
struct J {
  std::array<std::string, 3> motive_names;
  TermPtr motive;
  std::string base_name;
  TermPtr base;
  TermPtr path;
};
struct NatType {};
struct Zero {};
struct Suc { TermPtr pred; };
// Motive binds n; step binds (k, r) with r : motive k.
struct NatElim {
  std::string motive_name;
  TermPtr motive;
  TermPtr base;
  std::array<std::string, 2> step_names;
  TermPtr step;
  TermPtr target;
};
struct EmptyType {};
struct EmptyElim { std::string motive_name; TermPtr motive; TermPtr target; };
struct UnitType {};
struct Star {};
struct TwoType {};
struct ZeroTwo {};
struct OneTwo {};
struct TwoElim {
  std::string motive_name;
  TermPtr motive;
  TermPtr case0;
  TermPtr case1;
  TermPtr target;
};
// Reference to a top-level constant. Axioms stay opaque; definitions unfold.
struct AxiomRef { std::string name; };
struct Ann { TermPtr term; TermPtr type; };
}  // namespace core

using TermNode =
    std::variant<core::Var, core::Universe, core::Pi, core::Lam, core::App,
                 core::Sigma, core::Pair, core::Fst, core::Snd, core::IdType,
                 core::Refl, core::J, core::NatType, core::Zero, core::Suc,
                 core::NatElim, core::EmptyType, core::EmptyElim,
                 core::UnitType, core::Star, core::TwoType, core::ZeroTwo,
                 core::OneTwo, core::TwoElim, core::AxiomRef, core::Ann>;

struct Term {
  TermNode node;
};

template <typename T>
TermPtr make_term(T node) {
  return std::make_shared<const Term>(Term{TermNode{std::move(node)}});
}

/// Syntactic equality up to binder names (alpha-equivalence).
bool alpha_equal(const TermPtr& a, const TermPtr& b);

/// Adds `by` to every free index >= cutoff.
TermPtr shift(const TermPtr& t, std::uint32_t by, std::uint32_t cutoff = 0);

/// True when index `index` (relative to the root) occurs free in t.
bool occurs_free(const TermPtr& t, std::uint32_t index);

/// Names of every AxiomRef occurring in t.
void collect_refs(const TermPtr& t, std::set<std::string>& out);

/// Number of nodes; used by tests and generators to bound term size.
std::size_t term_size(const TermPtr& t);

// ---------------------------------------------------------------------------
// Declarations.

enum class DeclKind { kDef, kAxiom, kGoal };

std::string_view to_string(DeclKind kind);

struct Declaration {
  DeclKind kind = DeclKind::kDef;
  std::string name;
  TermPtr type;
  TermPtr body;  // null for axioms
  std::string provenance;
  Span span;
};

// ---------------------------------------------------------------------------
// Surface syntax (named variables, spans on every node).

namespace surface {
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Name { std::string id; };
struct Universe { Level level; };
struct Pi { std::vector<std::string> names; ExprPtr domain; ExprPtr codomain; };
struct Arrow { ExprPtr domain; ExprPtr codomain; };
struct Lam { std::vector<std::string> names; ExprPtr body; };
struct App { ExprPtr fn; ExprPtr arg; };
struct Sigma { std::vector<std::string> names; ExprPtr first; ExprPtr second; };
struct Product { ExprPtr first; ExprPtr second; };
struct Pair { ExprPtr first; ExprPtr second; };
struct Fst { ExprPtr pair; };
struct Snd { ExprPtr pair; };
struct IdType { ExprPtr type; ExprPtr lhs; ExprPtr rhs; };
struct Refl { ExprPtr term; };
struct J {
  std::array<std::string, 3> motive_names;
  ExprPtr motive;
  std::string base_name;
  ExprPtr base;
  ExprPtr path;
};
struct NatType {};
struct Zero {};
struct Suc { ExprPtr pred; };
struct NatLit { std::uint64_t value; };
struct NatElim {
  std::string motive_name;
  ExprPtr motive;
  ExprPtr base;
  std::array<std::string, 2> step_names;
  ExprPtr step;
  ExprPtr target;
};
struct EmptyType {};
struct EmptyElim { std::string motive_name; ExprPtr motive; ExprPtr target; };
struct UnitType {};
struct Star {};
struct TwoType {};
struct ZeroTwo {};
struct OneTwo {};
struct TwoElim {
  std::string motive_name;
  ExprPtr motive;
  ExprPtr case0;
  ExprPtr case1;
  ExprPtr target;
};
struct Ann { ExprPtr term; ExprPtr type; };

using ExprNode =
    std::variant<Name, Universe, Pi, Arrow, Lam, App, Sigma, Product, Pair,
                 Fst, Snd, IdType, Refl, J, NatType, Zero, Suc, NatLit,
                 NatElim, EmptyType, EmptyElim, UnitType, Star, TwoType,
                 ZeroTwo, OneTwo, TwoElim, Ann>;

struct Expr {
  Span span;
  ExprNode node;
};

struct Param {
  std::vector<std::string> names;
  ExprPtr type;
};

struct Decl {
  DeclKind kind = DeclKind::kDef;
  std::string name;
  Span name_span;
  Span span;
  std::vector<Param> params;
  ExprPtr type;
  ExprPtr body;  // null for axioms
  std::string provenance;
};
}  // namespace surface

struct ParseResult {
  std::vector<surface::Decl> decls;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

/// Parses a whole `.hott` source. Never throws on malformed input; on
/// error, recovers at the next declaration keyword.
ParseResult parse(std::string_view source);

struct ExprParseResult {
  surface::ExprPtr expr;
  std::vector<Diagnostic> diagnostics;
};

/// Parses a single expression (the whole input must be consumed).
ExprParseResult parse_expr(std::string_view source);

/// Names visible to the resolver from earlier declarations.
using GlobalScope = std::set<std::string, std::less<>>;

struct ResolveResult {
  std::vector<Declaration> decls;
  std::vector<Diagnostic> diagnostics;
};

struct DeclResolution {
  std::optional<Declaration> decl;
  std::vector<Diagnostic> diagnostics;
};

/// Resolves one declaration against the given globals. Does not add the
/// declaration's own name to `globals`.
DeclResolution resolve_decl(const surface::Decl& decl,
                            const GlobalScope& globals);

/// Resolves a sequence, threading top-level names through in order.
ResolveResult resolve(const std::vector<surface::Decl>& decls,
                      GlobalScope globals = {});

struct TermResolution {
  TermPtr term;
  std::vector<Diagnostic> diagnostics;
};

/// Resolves an expression under local names (innermost last).
TermResolution resolve_expr(const surface::ExprPtr& expr,
                            const std::vector<std::string>& locals,
                            const GlobalScope& globals);

/// Pretty-prints a core term whose free variables are named by `ctx`
/// (innermost last). The output re-parses to an alpha-equal term.
std::string print(const TermPtr& term, const std::vector<std::string>& ctx = {});

/// True for reserved words of the surface language.
bool is_keyword(std::string_view word);

}  // namespace hlevel

#endif  // HLEVEL_SYNTAX_HPP_
