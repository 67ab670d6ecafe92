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

#include <charconv>
#include <regex>
#include <sstream>
#include <vector>

#include "hlevel/corpus.hpp"

namespace hlevel {
namespace {

constexpr std::string_view kDirective = "--%";

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

long eval_expr(std::string_view raw, const TemplateEnv& env, std::size_t line) {
  static const std::regex re(R"(\s*(?:([A-Za-z]+)\s*(?:([+-])\s*(\d+))?|(-?\d+))\s*)");
  std::string text(raw);
  std::smatch m;
  if (!std::regex_match(text, m, re)) {
    throw TemplateError("line " + std::to_string(line) + ": malformed expression '" + text + "'");
  }
  if (m[4].matched) return std::stol(m[4].str());
  auto it = env.find(m[1].str());
  if (it == env.end()) {
    throw TemplateError("line " + std::to_string(line) + ": unknown variable '" + m[1].str() + "'");
  }
  long v = it->second;
  if (m[2].matched) {
    long k = std::stol(m[3].str());
    v = m[2].str() == "+" ? v + k : v - k;
  }
  return v;
}

bool eval_cond(std::string_view raw, const TemplateEnv& env, std::size_t line) {
  static const std::regex re(R"(\s*(.+?)\s*(==|!=|>=|<=|>|<)\s*(.+?)\s*)");
  std::string text(raw);
  std::smatch m;
  if (!std::regex_match(text, m, re)) {
    throw TemplateError("line " + std::to_string(line) + ": malformed condition '" + text + "'");
  }
  long a = eval_expr(m[1].str(), env, line);
  long b = eval_expr(m[3].str(), env, line);
  std::string op = m[2].str();
  if (op == "==") return a == b;
  if (op == "!=") return a != b;
  if (op == ">=") return a >= b;
  if (op == "<=") return a <= b;
  if (op == ">") return a > b;
  return a < b;
}

std::string substitute(std::string_view line, const TemplateEnv& env, std::size_t lineno) {
  std::string out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '{') {
      std::size_t close = line.find('}', i);
      if (close == std::string_view::npos) {
        throw TemplateError("line " + std::to_string(lineno) + ": unclosed '{'");
      }
      out += std::to_string(eval_expr(line.substr(i + 1, close - i - 1), env, lineno));
      i = close + 1;
    } else if (c == '}') {
      throw TemplateError("line " + std::to_string(lineno) + ": stray '}'");
    } else {
      out += c;
      ++i;
    }
  }
  return out;
}

struct Line {
  std::string_view text;
  std::size_t number;
};

bool is_directive(std::string_view l, std::string_view word) {
  if (!l.starts_with(kDirective)) return false;
  std::string rest = trim(l.substr(kDirective.size()));
  return rest == word || rest.starts_with(std::string(word) + " ");
}

// Index of the `--% end` matching the block opened at `open`.
std::size_t find_end(const std::vector<Line>& lines, std::size_t open) {
  int depth = 0;
  for (std::size_t j = open + 1; j < lines.size(); ++j) {
    if (is_directive(lines[j].text, "levels") || is_directive(lines[j].text, "if")) ++depth;
    if (is_directive(lines[j].text, "end")) {
      if (depth == 0) return j;
      --depth;
    }
  }
  throw TemplateError("line " + std::to_string(lines[open].number) + ": block is never closed");
}

void render(const std::vector<Line>& lines, std::size_t from, std::size_t to, const TemplateEnv& env,
            std::vector<std::string>& out) {
  std::size_t i = from;
  while (i < to) {
    std::string_view l = lines[i].text;
    if (!l.starts_with(kDirective)) {
      out.push_back(substitute(l, env, lines[i].number));
      ++i;
      continue;
    }
    std::string rest = trim(l.substr(kDirective.size()));
    if (is_directive(l, "levels")) {
      std::istringstream words(rest.substr(6));
      std::string a, b, extra;
      if (!(words >> a >> b) || (words >> extra)) {
        throw TemplateError("line " + std::to_string(lines[i].number) + ": expected '--% levels A B'");
      }
      std::size_t end = find_end(lines, i);
      long lo = eval_expr(a, env, lines[i].number);
      long hi = eval_expr(b, env, lines[i].number);
      for (long lv = lo; lv <= hi; ++lv) {
        TemplateEnv inner = env;
        inner["i"] = lv;
        render(lines, i + 1, end, inner, out);
      }
      i = end + 1;
    } else if (is_directive(l, "if")) {
      std::size_t end = find_end(lines, i);
      if (eval_cond(rest.substr(2), env, lines[i].number)) render(lines, i + 1, end, env, out);
      i = end + 1;
    } else if (is_directive(l, "end")) {
      throw TemplateError("line " + std::to_string(lines[i].number) + ": unmatched '--% end'");
    } else {
      throw TemplateError("line " + std::to_string(lines[i].number) + ": unknown directive '" + rest + "'");
    }
  }
}

}  // namespace

std::string instantiate(std::string_view text, const TemplateEnv& env) {
  std::vector<Line> lines;
  std::size_t start = 0, number = 1;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back({text.substr(start), number});
      break;
    }
    lines.push_back({text.substr(start, nl - start), number++});
    start = nl + 1;
  }
  std::vector<std::string> out;
  render(lines, 0, lines.size(), env, out);
  // Collapse runs of blank lines left behind by skipped blocks.
  std::string result;
  bool prev_blank = true;
  for (const auto& l : out) {
    bool blank = trim(l).empty();
    if (blank && prev_blank) continue;
    result += l;
    result += '\n';
    prev_blank = blank;
  }
  while (result.size() >= 2 && result[result.size() - 1] == '\n' && result[result.size() - 2] == '\n') {
    result.pop_back();
  }
  return result;
}

}  // namespace hlevel
