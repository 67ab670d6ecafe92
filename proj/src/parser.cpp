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

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <utility>

#include "hlevel/syntax.hpp"

namespace hlevel {
namespace {

enum class Tok {
  kIdent,
  kNumber,
  kLParen,
  kRParen,
  kComma,
  kColon,
  kDefEq,
  kFatArrow,
  kArrow,
  kStar,
  kProj1,
  kProj2,
  kZeroTwo,
  kOneTwo,
  kEof,
  kBad,
};

struct Token {
  Tok kind;
  Span span;
  std::string text;
};

struct RefComment {
  std::size_t pos;
  std::string text;
};

constexpr std::string_view kSub2 = "\xE2\x82\x82";   // U+2082
constexpr std::string_view kRArrow = "\xE2\x86\x92";  // U+2192
constexpr std::string_view kTimes = "\xC3\x97";       // U+00D7

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool is_ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '\'' || c == '@' || c == '!' ||
         c == '?' || c >= 0x80;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run(std::vector<RefComment>& refs) {
    std::vector<Token> out;
    for (;;) {
      skip_trivia(refs);
      if (pos_ >= src_.size()) {
        out.push_back({Tok::kEof, {src_.size(), src_.size()}, ""});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  bool starts_with(std::string_view s) const { return src_.substr(pos_).starts_with(s); }

  void skip_trivia(std::vector<RefComment>& refs) {
    while (pos_ < src_.size()) {
      unsigned char c = src_[pos_];
      if (std::isspace(c)) {
        ++pos_;
      } else if (starts_with("--")) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        std::string_view body = src_.substr(start + 2, pos_ - start - 2);
        while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
        if (body.starts_with("ref:")) {
          body.remove_prefix(4);
          while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
          while (!body.empty() && (body.back() == ' ' || body.back() == '\r')) body.remove_suffix(1);
          refs.push_back({start, std::string(body)});
        }
      } else {
        return;
      }
    }
  }

  Token make(Tok kind, std::size_t start) {
    return {kind, {start, pos_}, std::string(src_.substr(start, pos_ - start))};
  }

  Token next() {
    std::size_t start = pos_;
    unsigned char c = src_[pos_];
    if (std::isdigit(c)) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ - start == 1 && starts_with(kSub2) && (c == '0' || c == '1')) {
        pos_ += kSub2.size();
        return make(c == '0' ? Tok::kZeroTwo : Tok::kOneTwo, start);
      }
      return make(Tok::kNumber, start);
    }
    if (starts_with(kRArrow)) {
      pos_ += kRArrow.size();
      return make(Tok::kArrow, start);
    }
    if (starts_with(kTimes)) {
      pos_ += kTimes.size();
      return make(Tok::kStar, start);
    }
    if (is_ident_start(c)) {
      ++pos_;
      for (;;) {
        if (pos_ >= src_.size()) break;
        unsigned char d = src_[pos_];
        if (d == '-') {
          // A hyphen continues the identifier unless it starts `->` or `--`.
          if (pos_ + 1 < src_.size()) {
            unsigned char e = src_[pos_ + 1];
            if (e != '-' && e != '>' && is_ident_char(e)) {
              ++pos_;
              continue;
            }
          }
          break;
        }
        if (d >= 0x80 && (starts_with(kRArrow) || starts_with(kTimes))) break;
        if (!is_ident_char(d)) break;
        ++pos_;
      }
      return make(Tok::kIdent, start);
    }
    ++pos_;
    switch (c) {
      case '(':
        return make(Tok::kLParen, start);
      case ')':
        return make(Tok::kRParen, start);
      case ',':
        return make(Tok::kComma, start);
      case '*':
        return make(Tok::kStar, start);
      case ':':
        if (pos_ < src_.size() && src_[pos_] == '=') {
          ++pos_;
          return make(Tok::kDefEq, start);
        }
        return make(Tok::kColon, start);
      case '=':
        if (pos_ < src_.size() && src_[pos_] == '>') {
          ++pos_;
          return make(Tok::kFatArrow, start);
        }
        break;
      case '-':
        if (pos_ < src_.size() && src_[pos_] == '>') {
          ++pos_;
          return make(Tok::kArrow, start);
        }
        break;
      case '.':
        if (pos_ < src_.size() && (src_[pos_] == '1' || src_[pos_] == '2')) {
          bool one = src_[pos_] == '1';
          ++pos_;
          if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            return make(one ? Tok::kProj1 : Tok::kProj2, start);
          }
        }
        break;
      default:
        break;
    }
    // Swallow the rest of a multi-byte sequence so spans stay on boundaries.
    while (pos_ < src_.size() && (static_cast<unsigned char>(src_[pos_]) & 0xC0) == 0x80) ++pos_;
    return make(Tok::kBad, start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

struct ParseError {
  std::string code;
  std::string message;
  Span span;
};

bool universe_level(std::string_view word, Level& out) {
  if (word.size() < 2 || word[0] != 'U') return false;
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(word.data() + 1, word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size()) return false;
  if (word.size() > 2 && word[1] == '0') return false;
  out = Level{value};
  return true;
}

using namespace surface;

class Parser {
 public:
  Parser(std::string_view src, std::vector<Token> toks, std::vector<RefComment> refs)
      : src_(src), toks_(std::move(toks)), refs_(std::move(refs)) {}

  ParseResult parse_file() {
    ParseResult result;
    std::size_t prev_end = 0;
    while (peek().kind != Tok::kEof) {
      std::size_t start_index = index_;
      try {
        Decl decl = parse_decl(prev_end);
        prev_end = decl.span.end;
        result.decls.push_back(std::move(decl));
      } catch (const ParseError& e) {
        result.diagnostics.push_back({Severity::kError, e.code, e.message, e.span});
        if (index_ == start_index) ++index_;
        recover();
        prev_end = peek().span.begin;
      }
    }
    return result;
  }

  ExprParseResult parse_single() {
    ExprParseResult result;
    try {
      result.expr = parse_expr();
      if (peek().kind != Tok::kEof) fail("syntax", "unexpected trailing input");
    } catch (const ParseError& e) {
      result.expr = nullptr;
      result.diagnostics.push_back({Severity::kError, e.code, e.message, e.span});
    }
    return result;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(index_ + ahead, toks_.size() - 1);
    return toks_[i];
  }

  Token advance() {
    Token t = peek();
    if (t.kind != Tok::kEof) ++index_;
    last_end_ = t.span.end;
    return t;
  }

  bool is_word(const Token& t, std::string_view word) const {
    return t.kind == Tok::kIdent && t.text == word;
  }

  [[noreturn]] void fail(std::string code, std::string message) const {
    const Token& t = peek();
    if (t.kind == Tok::kEof) {
      throw ParseError{"unterminated", "unexpected end of input: " + message,
                       {t.span.begin, t.span.end}};
    }
    throw ParseError{std::move(code), message + " (found '" + t.text + "')", t.span};
  }

  Token expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) fail("syntax", "expected " + std::string(what));
    return advance();
  }

  std::string expect_binder_name() {
    const Token& t = peek();
    if (t.kind != Tok::kIdent || is_keyword(t.text)) fail("syntax", "expected a variable name");
    return advance().text;
  }

  void recover() {
    while (peek().kind != Tok::kEof) {
      const Token& t = peek();
      if (is_word(t, "def") || is_word(t, "axiom") || is_word(t, "goal")) return;
      ++index_;
    }
  }

  Decl parse_decl(std::size_t prev_end) {
    Decl decl;
    const Token& kw = peek();
    if (is_word(kw, "def")) {
      decl.kind = DeclKind::kDef;
    } else if (is_word(kw, "axiom")) {
      decl.kind = DeclKind::kAxiom;
    } else if (is_word(kw, "goal")) {
      decl.kind = DeclKind::kGoal;
    } else {
      fail("syntax", "expected 'def', 'axiom' or 'goal'");
    }
    std::size_t begin = advance().span.begin;
    for (const RefComment& r : refs_) {
      if (r.pos >= prev_end && r.pos < begin) decl.provenance = r.text;
    }
    decl.name_span = peek().span;
    decl.name = expect_binder_name();
    while (peek().kind == Tok::kLParen) {
      advance();
      Param p;
      while (peek().kind == Tok::kIdent && !is_keyword(peek().text)) p.names.push_back(advance().text);
      if (p.names.empty()) fail("syntax", "expected parameter names");
      expect(Tok::kColon, "':' in parameter group");
      p.type = parse_expr();
      expect(Tok::kRParen, "')' closing parameter group");
      decl.params.push_back(std::move(p));
    }
    if (peek().kind != Tok::kColon) {
      const Token& t = peek();
      throw ParseError{"syntax", "expected ':' followed by the declared type",
                       {t.span.begin, std::max(t.span.end, src_.size())}};
    }
    advance();
    decl.type = parse_expr();
    if (decl.kind != DeclKind::kAxiom) {
      expect(Tok::kDefEq, "':=' before the body");
      decl.body = parse_expr();
    }
    decl.span = {begin, last_end_};
    return decl;
  }

  template <typename T>
  ExprPtr node(std::size_t begin, T n) {
    return std::make_shared<const Expr>(Expr{{begin, last_end_}, ExprNode{std::move(n)}});
  }

  ExprPtr parse_expr() {
    const Token& t = peek();
    if (is_word(t, "fun")) {
      std::size_t begin = advance().span.begin;
      std::vector<std::string> names;
      while (peek().kind == Tok::kIdent && !is_keyword(peek().text)) names.push_back(advance().text);
      if (names.empty()) fail("syntax", "expected binder names after 'fun'");
      expect(Tok::kFatArrow, "'=>'");
      ExprPtr body = parse_expr();
      return node(begin, Lam{std::move(names), body});
    }
    if (t.kind == Tok::kLParen) {
      if (ExprPtr tele = try_telescope()) return tele;
    }
    std::size_t begin = t.span.begin;
    ExprPtr lhs = parse_prod();
    if (peek().kind == Tok::kArrow) {
      advance();
      ExprPtr rhs = parse_expr();
      return node(begin, Arrow{lhs, rhs});
    }
    return lhs;
  }

  // (x y : A) (z : B) -> C  or  (x : A) * B. Backtracks if the groups are
  // not followed by a connective.
  ExprPtr try_telescope() {
    std::size_t saved = index_;
    std::size_t saved_end = last_end_;
    struct Group {
      std::size_t begin;
      std::vector<std::string> names;
      ExprPtr type;
    };
    std::vector<Group> groups;
    while (peek().kind == Tok::kLParen) {
      std::size_t k = 1;
      while (peek(k).kind == Tok::kIdent && !is_keyword(peek(k).text)) ++k;
      if (k == 1 || peek(k).kind != Tok::kColon) break;
      Group g;
      g.begin = advance().span.begin;
      for (std::size_t i = 1; i < k; ++i) g.names.push_back(advance().text);
      advance();  // ':'
      try {
        g.type = parse_expr();
        if (peek().kind != Tok::kRParen) {
          index_ = saved;
          last_end_ = saved_end;
          return nullptr;
        }
        advance();
      } catch (const ParseError&) {
        index_ = saved;
        last_end_ = saved_end;
        return nullptr;
      }
      groups.push_back(std::move(g));
    }
    Tok conn = peek().kind;
    if (groups.empty() || (conn != Tok::kArrow && conn != Tok::kStar)) {
      index_ = saved;
      last_end_ = saved_end;
      return nullptr;
    }
    advance();
    ExprPtr body = parse_expr();
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
      if (conn == Tok::kArrow) {
        body = node(it->begin, Pi{it->names, it->type, body});
      } else {
        body = node(it->begin, Sigma{it->names, it->type, body});
      }
    }
    return body;
  }

  ExprPtr parse_prod() {
    std::size_t begin = peek().span.begin;
    ExprPtr lhs = parse_app();
    if (peek().kind == Tok::kStar) {
      advance();
      ExprPtr rhs = parse_prod();
      return node(begin, Product{lhs, rhs});
    }
    return lhs;
  }

  bool starts_atom(const Token& t) const {
    switch (t.kind) {
      case Tok::kIdent:
        return !is_keyword(t.text) || is_atom_keyword(t.text);
      case Tok::kNumber:
      case Tok::kLParen:
      case Tok::kZeroTwo:
      case Tok::kOneTwo:
        return true;
      default:
        return false;
    }
  }

  static bool is_atom_keyword(std::string_view w) {
    Level l;
    return w == "Nat" || w == "zero" || w == "Empty" || w == "Unit" || w == "star" ||
           w == "Two" || universe_level(w, l);
  }

  ExprPtr parse_app() {
    std::size_t begin = peek().span.begin;
    ExprPtr head = parse_head();
    while (starts_atom(peek())) {
      ExprPtr arg = parse_atom();
      head = node(begin, App{head, arg});
    }
    return head;
  }

  // (x y p => M)
  template <std::size_t N>
  std::pair<std::array<std::string, N>, ExprPtr> parse_binder_group(std::string_view what) {
    expect(Tok::kLParen, "'(' opening " + std::string(what));
    std::array<std::string, N> names;
    for (std::size_t i = 0; i < N; ++i) names[i] = expect_binder_name();
    expect(Tok::kFatArrow, "'=>' in " + std::string(what));
    ExprPtr body = parse_expr();
    expect(Tok::kRParen, "')' closing " + std::string(what));
    return {std::move(names), body};
  }

  ExprPtr parse_head() {
    const Token& t = peek();
    if (t.kind != Tok::kIdent || !is_keyword(t.text) || is_atom_keyword(t.text)) {
      if (!starts_atom(t)) fail("syntax", "expected an expression");
      return parse_atom();
    }
    std::size_t begin = t.span.begin;
    std::string word = advance().text;
    if (word == "fst") return node(begin, Fst{parse_atom()});
    if (word == "snd") return node(begin, Snd{parse_atom()});
    if (word == "suc") return node(begin, Suc{parse_atom()});
    if (word == "refl") return node(begin, Refl{parse_atom()});
    if (word == "Id") {
      ExprPtr a = parse_atom();
      ExprPtr x = parse_atom();
      ExprPtr y = parse_atom();
      return node(begin, IdType{a, x, y});
    }
    if (word == "J") {
      auto [mnames, motive] = parse_binder_group<3>("J motive");
      auto [bnames, base] = parse_binder_group<1>("J base case");
      ExprPtr path = parse_atom();
      return node(begin, J{mnames, motive, bnames[0], base, path});
    }
    if (word == "natElim") {
      auto [mnames, motive] = parse_binder_group<1>("natElim motive");
      ExprPtr base = parse_atom();
      auto [snames, step] = parse_binder_group<2>("natElim step");
      ExprPtr target = parse_atom();
      return node(begin, NatElim{mnames[0], motive, base, snames, step, target});
    }
    if (word == "twoElim") {
      auto [mnames, motive] = parse_binder_group<1>("twoElim motive");
      ExprPtr c0 = parse_atom();
      ExprPtr c1 = parse_atom();
      ExprPtr target = parse_atom();
      return node(begin, TwoElim{mnames[0], motive, c0, c1, target});
    }
    if (word == "emptyElim") {
      auto [mnames, motive] = parse_binder_group<1>("emptyElim motive");
      ExprPtr target = parse_atom();
      return node(begin, EmptyElim{mnames[0], motive, target});
    }
    --index_;
    fail("syntax", "keyword '" + word + "' cannot start an expression");
  }

  ExprPtr parse_atom() {
    std::size_t begin = peek().span.begin;
    ExprPtr base = parse_atom_core();
    for (;;) {
      if (peek().kind == Tok::kProj1) {
        advance();
        base = node(begin, Fst{base});
      } else if (peek().kind == Tok::kProj2) {
        advance();
        base = node(begin, Snd{base});
      } else {
        return base;
      }
    }
  }

  ExprPtr parse_atom_core() {
    const Token& t = peek();
    std::size_t begin = t.span.begin;
    switch (t.kind) {
      case Tok::kNumber: {
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc() || value > 100000) fail("syntax", "numeral out of range");
        advance();
        return node(begin, NatLit{value});
      }
      case Tok::kZeroTwo:
        advance();
        return node(begin, ZeroTwo{});
      case Tok::kOneTwo:
        advance();
        return node(begin, OneTwo{});
      case Tok::kLParen: {
        advance();
        ExprPtr inner = parse_expr();
        if (peek().kind == Tok::kComma) {
          std::vector<ExprPtr> items{inner};
          while (peek().kind == Tok::kComma) {
            advance();
            items.push_back(parse_expr());
          }
          expect(Tok::kRParen, "')' closing tuple");
          ExprPtr acc = items.back();
          for (std::size_t i = items.size() - 1; i-- > 0;) {
            acc = std::make_shared<const Expr>(
                Expr{{items[i]->span.begin, last_end_}, ExprNode{Pair{items[i], acc}}});
          }
          return std::make_shared<const Expr>(Expr{{begin, last_end_}, acc->node});
        }
        if (peek().kind == Tok::kColon) {
          advance();
          ExprPtr type = parse_expr();
          expect(Tok::kRParen, "')' closing annotation");
          return node(begin, Ann{inner, type});
        }
        expect(Tok::kRParen, "')'");
        return std::make_shared<const Expr>(Expr{{begin, last_end_}, inner->node});
      }
      case Tok::kIdent: {
        Level level;
        if (universe_level(t.text, level)) {
          advance();
          return node(begin, Universe{level});
        }
        if (t.text == "Nat") return advance(), node(begin, NatType{});
        if (t.text == "zero") return advance(), node(begin, Zero{});
        if (t.text == "Empty") return advance(), node(begin, EmptyType{});
        if (t.text == "Unit") return advance(), node(begin, UnitType{});
        if (t.text == "star") return advance(), node(begin, Star{});
        if (t.text == "Two") return advance(), node(begin, TwoType{});
        if (is_keyword(t.text)) fail("syntax", "keyword '" + t.text + "' is not allowed here");
        std::string id = advance().text;
        return node(begin, Name{std::move(id)});
      }
      default:
        fail("syntax", "expected an expression");
    }
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::vector<RefComment> refs_;
  std::size_t index_ = 0;
  std::size_t last_end_ = 0;
};

}  // namespace

bool is_keyword(std::string_view w) {
  static const std::set<std::string_view> kWords = {
      "def",  "axiom", "goal",  "fun",  "J",    "natElim", "twoElim", "emptyElim",
      "fst",  "snd",   "suc",   "refl", "Id",   "Nat",     "zero",    "Empty",
      "Unit", "star",  "Two"};
  Level l;
  return kWords.contains(w) || universe_level(w, l);
}

ParseResult parse(std::string_view source) {
  std::vector<RefComment> refs;
  std::vector<Token> toks = Lexer(source).run(refs);
  ParseResult result;
  for (const Token& t : toks) {
    if (t.kind == Tok::kBad) {
      result.diagnostics.push_back(
          {Severity::kError, "syntax", "unexpected character '" + t.text + "'", t.span});
    }
  }
  if (!result.diagnostics.empty()) return result;
  return Parser(source, std::move(toks), std::move(refs)).parse_file();
}

ExprParseResult parse_expr(std::string_view source) {
  std::vector<RefComment> refs;
  std::vector<Token> toks = Lexer(source).run(refs);
  for (const Token& t : toks) {
    if (t.kind == Tok::kBad) {
      return {nullptr, {{Severity::kError, "syntax", "unexpected character '" + t.text + "'", t.span}}};
    }
  }
  return Parser(source, std::move(toks), {}).parse_single();
}

}  // namespace hlevel
