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

// Bidirectional type checking of core terms and whole modules.

#ifndef HLEVEL_CHECK_HPP_
#define HLEVEL_CHECK_HPP_

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hlevel/eval.hpp"
#include "hlevel/syntax.hpp"

namespace hlevel {

struct CheckOptions {
  std::uint32_t max_level = kDefaultMaxLevel;
  bool eta_sigma = true;
  /// Axioms left out of the registry, by base name (the part before '@').
  /// check_module skips their declarations.
  std::set<std::string, std::less<>> omit_axioms;
};

/// "ua@0" -> "ua".
std::string_view base_name(std::string_view name);

/// Reads HLEVEL_MAX_LEVEL, falling back to kDefaultMaxLevel.
std::uint32_t max_level_from_env();

class TypeError : public std::runtime_error {
 public:
  TypeError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Local context: values of the bound variables (fresh neutrals), their
/// types and display names. Innermost last.
struct Context {
  Env env;
  std::vector<ValuePtr> types;
  std::vector<std::string> names;

  std::uint32_t level() const { return static_cast<std::uint32_t>(types.size()); }
  Context bind(std::string name, ValuePtr type) const;
  /// Binds a variable to a known value (used for let-like extension).
  Context define(std::string name, ValuePtr type, ValuePtr value) const;
};

class Checker {
 public:
  Checker(Globals& globals, CheckOptions opts = {});

  ValuePtr infer(const Context& ctx, const TermPtr& t);
  void check(const Context& ctx, const TermPtr& t, const ValuePtr& type);
  /// Infers t and requires it to be a universe; returns its level.
  Level infer_universe(const Context& ctx, const TermPtr& t);

  bool convertible(const Context& ctx, const ValuePtr& type, const ValuePtr& a, const ValuePtr& b);
  bool subtype(const Context& ctx, const ValuePtr& a, const ValuePtr& b);

  /// Checks a resolved declaration and, unless it is a goal, adds it to
  /// the globals. Throws TypeError on rejection.
  void check_declaration(const Declaration& decl);

  std::string show(const Context& ctx, const ValuePtr& v) const;

  Globals& globals() { return g_; }
  const CheckOptions& options() const { return opts_; }

 private:
  Conversion conversion(const Context& ctx) const;

  Globals& g_;
  CheckOptions opts_;
};

enum class DeclStatus { kAccepted, kRejected };

struct DeclReport {
  std::string name;
  DeclKind kind = DeclKind::kDef;
  DeclStatus status = DeclStatus::kRejected;
  std::string provenance;
  double ms = 0.0;
  std::vector<Diagnostic> diagnostics;
};

struct ModuleReport {
  std::string file;
  std::vector<Diagnostic> diagnostics;  // parse errors not tied to a declaration
  std::vector<DeclReport> decls;
  double ms = 0.0;

  std::size_t accepted() const;
  std::size_t rejected() const;
  bool ok() const { return diagnostics.empty() && rejected() == 0; }
};

/// Parses, resolves and checks every declaration of `source` in order
/// against (and into) `globals`. Rejected declarations are reported and
/// skipped; later ones are still checked.
ModuleReport check_module(Globals& globals, std::string_view source, std::string file,
                          const CheckOptions& opts = {});

}  // namespace hlevel

#endif  // HLEVEL_CHECK_HPP_
