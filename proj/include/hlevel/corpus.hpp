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

// Proof corpus: template instantiation, per-level generation, manifest and
// whole-corpus checking.

#ifndef HLEVEL_CORPUS_HPP_
#define HLEVEL_CORPUS_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hlevel/check.hpp"

namespace hlevel {

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using TemplateEnv = std::map<std::string, long, std::less<>>;

/// Expands a corpus template.
///
///   {e}                 e is an integer or VAR, VAR+k, VAR-k
///   --% levels A B      repeat the block for i = A..B (inclusive)
///   --% if A op B       keep the block when the comparison holds
///   --% end             closes the innermost block
///
/// Throws TemplateError on unknown variables or malformed directives.
std::string instantiate(std::string_view text, const TemplateEnv& env);

/// Names of the embedded templates, in build order.
std::vector<std::string> template_names();
/// Embedded template source; throws CorpusError if unknown.
std::string_view template_source(std::string_view name);

constexpr int kDefaultLevelCeiling = 2;

struct CorpusOptions {
  std::uint32_t max_level = kDefaultMaxLevel;
  int level_ceiling = kDefaultLevelCeiling;
};

enum class Section { kPrelude, kGeneric, kGenerated };
std::string_view to_string(Section s);

struct CorpusFile {
  std::string path;  // relative to the corpus root, '/'-separated
  Section section = Section::kPrelude;
  std::optional<int> level;
  std::string text;
  std::string generality;
  std::vector<std::string> refs;
  std::vector<std::string> declarations;
  std::vector<std::string> tags;  // requires-ua, requires-funext, requires-eta-sigma
};

struct SymbolEntry {
  std::string symbol;
  std::string decl;
};

struct Corpus {
  int level = 0;
  std::vector<CorpusFile> files;  // manifest order
  std::vector<SymbolEntry> symbols;

  const CorpusFile* find(std::string_view path) const;
  CorpusFile* find(std::string_view path);
};

/// Emits the complete corpus (prelude, generic, levels 0..level) in memory,
/// with manifest metadata. Tag computation runs the kernel. Throws
/// CorpusError if the level is unsupported.
Corpus generate_corpus(int level, const CorpusOptions& opts = {});

/// The notation symbols in scope at a given generated level.
std::vector<std::string> required_symbols(int level);

std::string manifest_json(const Corpus& corpus);

/// Writes the corpus files and manifest.json under `root`, removing stale
/// generated files. Byte-identical across runs.
void write_corpus(const Corpus& corpus, const std::filesystem::path& root);

/// Reads manifest.json and the files it lists.
Corpus read_corpus(const std::filesystem::path& root);

struct CorpusReport {
  std::vector<ModuleReport> modules;
  bool ok() const;
  const ModuleReport* module(std::string_view path) const;
  /// Status of a declaration, if it was checked.
  std::optional<DeclStatus> status(std::string_view decl) const;
};

/// Checks every file in manifest order against one set of globals.
CorpusReport check_corpus(const Corpus& corpus, const CheckOptions& opts = {});

}  // namespace hlevel

#endif  // HLEVEL_CORPUS_HPP_
