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

// Semantic values, evaluation, read-back and definitional equality.
//
// Values are in weak-head form. Definitions are glued: a reference to a
// definition evaluates to a neutral headed by its name that also carries
// a lazily computed unfolding, so conversion can compare names and spines
// first and only unfold on mismatch.

#ifndef HLEVEL_EVAL_HPP_
#define HLEVEL_EVAL_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "hlevel/syntax.hpp"

namespace hlevel {

struct Value;
class Globals;
using ValuePtr = std::shared_ptr<const Value>;

class Env {
 public:
  Env() = default;
  Env extend(ValuePtr v) const;
  const ValuePtr& lookup(std::uint32_t index) const;
  std::uint32_t size() const { return size_; }

 private:
  struct Cell {
    ValuePtr value;
    std::shared_ptr<const Cell> next;
  };
  std::shared_ptr<const Cell> head_;
  std::uint32_t size_ = 0;
};

struct Closure {
  Env env;
  TermPtr body;
  std::string name;
};

namespace val {
struct Universe { Level level; };
struct Pi { std::string name; ValuePtr domain; Closure codomain; };
struct Lam { Closure body; };
struct Sigma { std::string name; ValuePtr first; Closure second; };
struct Pair { ValuePtr first; ValuePtr second; };
struct IdType { ValuePtr type; ValuePtr lhs; ValuePtr rhs; };
struct Refl { ValuePtr term; };
struct NatType {};
struct Zero {};
struct Suc { ValuePtr pred; };
struct EmptyType {};
struct UnitType {};
struct Star {};
struct TwoType {};
struct ZeroTwo {};
struct OneTwo {};

struct FApp { ValuePtr arg; };
struct FFst {};
struct FSnd {};
struct FJ { std::array<std::string, 3> motive_names; Closure motive; Closure base; };
struct FNatElim { Closure motive; ValuePtr base; Closure step; };
struct FTwoElim { Closure motive; ValuePtr case0; ValuePtr case1; };
struct FEmptyElim { Closure motive; };
using Frame = std::variant<FApp, FFst, FSnd, FJ, FNatElim, FTwoElim, FEmptyElim>;

struct VarHead { std::uint32_t level; };
struct ConstHead { std::string name; };
using Head = std::variant<VarHead, ConstHead>;

// Unfolding of a glued neutral: either preset (a bare definition) or
// computed once by eliminating the parent's unfolding with `frame`.
struct Unfold {
  const Globals* globals = nullptr;
  ValuePtr parent;
  Frame frame;
  mutable std::once_flag once;
  mutable ValuePtr cached;
};

struct Neutral {
  Head head;
  std::vector<Frame> spine;
  std::shared_ptr<const Unfold> unfold;  // null unless headed by a definition
};
}  // namespace val

using ValueNode =
    std::variant<val::Universe, val::Pi, val::Lam, val::Sigma, val::Pair,
                 val::IdType, val::Refl, val::NatType, val::Zero, val::Suc,
                 val::EmptyType, val::UnitType, val::Star, val::TwoType,
                 val::ZeroTwo, val::OneTwo, val::Neutral>;

struct Value {
  ValueNode node;
};

template <typename T>
ValuePtr make_value(T node) {
  return std::make_shared<const Value>(Value{ValueNode{std::move(node)}});
}

ValuePtr make_var(std::uint32_t level);

struct GlobalEntry {
  Declaration decl;
  ValuePtr type;
  ValuePtr value;  // definitions only
  ValuePtr ref;    // what a reference to the name evaluates to
};

/// Checked top-level constants. Entries are never removed, so pointers
/// held by values stay valid for the lifetime of the table.
class Globals {
 public:
  const GlobalEntry* find(std::string_view name) const;
  const GlobalEntry& add_axiom(Declaration decl, ValuePtr type);
  const GlobalEntry& add_def(Declaration decl, ValuePtr type, ValuePtr value);
  GlobalScope scope() const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, GlobalEntry, std::less<>> entries_;
};

ValuePtr eval(const Globals& g, const Env& env, const TermPtr& t);
ValuePtr apply(const Globals& g, const Closure& c, std::initializer_list<ValuePtr> args);
ValuePtr elim(const Globals& g, const ValuePtr& v, val::Frame frame);
ValuePtr app(const Globals& g, const ValuePtr& f, const ValuePtr& a);
ValuePtr fst(const Globals& g, const ValuePtr& v);
ValuePtr snd(const Globals& g, const ValuePtr& v);

/// Unfolds glued definitions at the head until the value is not headed by one.
ValuePtr force(const ValuePtr& v);

/// Reads a value back into a term at context size `level`. With `unfold`
/// false, glued definitions are printed by name.
TermPtr quote(const Globals& g, std::uint32_t level, const ValuePtr& v, bool unfold = true);

/// Beta-delta-iota normal form of a closed term.
TermPtr normalize(const Globals& g, const TermPtr& t);

struct ConvOptions {
  bool eta_sigma = true;
};

/// Definitional equality. Tracks the types of the fresh variables it
/// introduces so that unit eta can fire inside neutral spines.
class Conversion {
 public:
  Conversion(const Globals& g, std::vector<ValuePtr> var_types, ConvOptions opts = {});

  /// a ≡ b : type. `type` may be null when unknown.
  bool equal(const ValuePtr& type, const ValuePtr& a, const ValuePtr& b);
  bool equal_types(const ValuePtr& a, const ValuePtr& b);
  /// Cumulative subtyping of types.
  bool subtype(const ValuePtr& a, const ValuePtr& b);

 private:
  ValuePtr fresh(const ValuePtr& type);
  void pop();
  bool equal_neutral(const val::Neutral& a, const val::Neutral& b, ValuePtr* out_type);
  bool equal_closures(const Closure& a, const Closure& b, std::vector<ValuePtr> types,
                      const ValuePtr& body_type, bool as_types);
  ValuePtr head_type(const val::Head& h) const;

  const Globals& g_;
  std::vector<ValuePtr> types_;
  ConvOptions opts_;
};

}  // namespace hlevel

#endif  // HLEVEL_EVAL_HPP_
