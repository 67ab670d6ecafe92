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

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "corpus_templates.hpp"
#include "hlevel/corpus.hpp"

namespace hlevel {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct Piece {
  std::string template_name;
  std::string out_name;
  Section section;
};

const std::vector<Piece>& prelude_and_generic() {
  static const std::vector<Piece> pieces = {
      {"base", "01-base", Section::kPrelude},
      {"paths", "02-paths", Section::kPrelude},
      {"equiv", "03-equiv", Section::kPrelude},
      {"funext", "04-funext", Section::kPrelude},
      {"univalence", "05-univalence", Section::kPrelude},
      {"trunc", "06-trunc", Section::kPrelude},
      {"univalent", "07-univalent", Section::kPrelude},
      {"pointed", "08-pointed", Section::kPrelude},
      {"families", "01-families", Section::kGeneric},
      {"om-si-comm", "02-om-si-comm", Section::kGeneric},
      {"om-pi-comm", "03-om-pi-comm", Section::kGeneric},
      {"forget", "04-forget", Section::kGeneric},
      {"local-global", "05-local-global", Section::kGeneric},
  };
  return pieces;
}

const std::vector<Piece>& level_pieces() {
  static const std::vector<Piece> pieces = {
      {"level-loops", "01-loops", Section::kGenerated},
      {"level-nontrivial", "02-nontrivial", Section::kGenerated},
      {"level-chain", "03-chain", Section::kGenerated},
      {"level-theorems", "04-theorems", Section::kGenerated},
  };
  return pieces;
}

std::string section_dir(Section s) {
  switch (s) {
    case Section::kPrelude: return "prelude";
    case Section::kGeneric: return "generic";
    case Section::kGenerated: return "generated";
  }
  return "";
}

std::string extract_generality(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  bool inside = false;
  while (std::getline(in, line)) {
    if (!inside) {
      if (line.starts_with("-- generality:")) {
        out = line.substr(14);
        inside = true;
      }
      continue;
    }
    if (!line.starts_with("-- ") || line.starts_with("-- ref:")) break;
    out += " " + line.substr(3);
  }
  std::size_t b = out.find_first_not_of(' ');
  return b == std::string::npos ? std::string() : out.substr(b);
}

// Fills declarations and refs from the parsed file.
void describe(CorpusFile& f) {
  ParseResult parsed = parse(f.text);
  if (!parsed.ok()) {
    throw CorpusError(f.path + ": generated file does not parse: " + parsed.diagnostics.front().message);
  }
  for (const auto& d : parsed.decls) {
    f.declarations.push_back(d.name);
    if (!d.provenance.empty() &&
        std::find(f.refs.begin(), f.refs.end(), d.provenance) == f.refs.end()) {
      f.refs.push_back(d.provenance);
    }
  }
}

std::string header(const std::string& template_name, int level) {
  return "-- Generated by `hlevel gen --level " + std::to_string(level) + "` from templates/" + template_name +
         ".hott.in; do not edit.\n";
}

// requires-ua / requires-funext by transitive reference to the axioms.
void static_tags(Corpus& corpus) {
  std::map<std::string, std::pair<bool, bool>, std::less<>> needs;  // name -> (ua, funext)
  GlobalScope scope;
  for (auto& f : corpus.files) {
    bool ua = false, fe = false;
    ResolveResult res = resolve(parse(f.text).decls, scope);
    for (const auto& d : res.decls) {
      std::set<std::string> refs;
      if (d.type) collect_refs(d.type, refs);
      if (d.body) collect_refs(d.body, refs);
      bool dua = d.kind == DeclKind::kAxiom && base_name(d.name) == "ua";
      bool dfe = d.kind == DeclKind::kAxiom && base_name(d.name) == "funext";
      for (const auto& r : refs) {
        auto it = needs.find(r);
        if (it == needs.end()) continue;
        dua = dua || it->second.first;
        dfe = dfe || it->second.second;
      }
      needs[d.name] = {dua, dfe};
      if (d.kind != DeclKind::kGoal) scope.insert(d.name);
      ua = ua || dua;
      fe = fe || dfe;
    }
    if (ua) f.tags.push_back("requires-ua");
    if (fe) f.tags.push_back("requires-funext");
  }
}

// requires-eta-sigma empirically: files that do not fully check with
// Sigma eta switched off.
void eta_tags(Corpus& corpus, std::uint32_t max_level) {
  CheckOptions opts;
  opts.max_level = max_level;
  opts.eta_sigma = false;
  CorpusReport report = check_corpus(corpus, opts);
  for (std::size_t i = 0; i < corpus.files.size(); ++i) {
    if (!report.modules[i].ok()) corpus.files[i].tags.push_back("requires-eta-sigma");
  }
}

void add_symbols(Corpus& c) {
  auto add = [&](std::string sym, std::string decl) { c.symbols.push_back({std::move(sym), std::move(decl)}); };
  add("Ω", "Om@0");
  add("Ω̃", "Omt@0");
  add("Σ•", "SigmaP@0");
  add("Π•", "PiP@0");
  add("𝒰•", "Upt@0");
  add("is-trunc", "is-trunc@0");
  add("idtoeqv", "idtoeqv@0");
  add("ua", "ua@0");
  add("happly", "happly@0");
  add("funext", "funext@0");
  add("IsEquiv", "IsEquiv@0");
  add("iseq^id", "iseq-id@0");
  add("iseq^swap", "iseq-swap");
  add("swap", "swap");
  add("transport", "tr@0");
  add("path composition", "comp@0");
  add("path inverse", "inv@0");
  if (c.level >= 1) {
    add("L", "L");
    add("K", "K");
    add("α", "alpha");
    add("β", "beta");
    add("u", "u");
  }
  add("Loop_n@-1", "Loop@-1");
  for (int n = 0; n <= c.level; ++n) {
    std::string s = std::to_string(n);
    add("𝒰≤n@" + s, "Utr@" + s);
    add("P_n@" + s, "P@" + s);
    add("Loop_n@" + s, "Loop@" + s);
    add("h_n@" + s, "h@" + s);
    add("q̃@" + s, "qt@" + s);
    if (n >= 1) {
      add("ξ@" + s, "xi@" + s);
      add("d_q@" + s, "d@" + s);
    }
  }
  add("h_n@" + std::to_string(c.level + 1), "h@" + std::to_string(c.level + 1));
}

ordered_json file_json(const CorpusFile& f) {
  ordered_json j;
  j["path"] = f.path;
  if (f.level) j["level"] = *f.level;
  j["generality"] = f.generality;
  j["tags"] = f.tags;
  j["refs"] = f.refs;
  j["declarations"] = f.declarations;
  return j;
}

void write_if_changed(const fs::path& p, const std::string& content) {
  {
    std::ifstream in(p, std::ios::binary);
    if (in) {
      std::stringstream ss;
      ss << in.rdbuf();
      if (ss.str() == content) return;
    }
  }
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw CorpusError("cannot write " + p.string());
  out << content;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw CorpusError("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view to_string(Section s) {
  switch (s) {
    case Section::kPrelude: return "prelude";
    case Section::kGeneric: return "generic";
    case Section::kGenerated: return "generated";
  }
  return "";
}

std::vector<std::string> template_names() {
  std::vector<std::string> out;
  for (const auto& t : detail::embedded_templates()) out.emplace_back(t.name);
  return out;
}

std::string_view template_source(std::string_view name) {
  for (const auto& t : detail::embedded_templates()) {
    if (t.name == name) return t.text;
  }
  throw CorpusError("unknown template '" + std::string(name) + "'");
}

const CorpusFile* Corpus::find(std::string_view path) const {
  for (const auto& f : files) {
    if (f.path == path) return &f;
  }
  return nullptr;
}

CorpusFile* Corpus::find(std::string_view path) {
  return const_cast<CorpusFile*>(std::as_const(*this).find(path));
}

std::vector<std::string> required_symbols(int level) {
  Corpus c;
  c.level = level;
  add_symbols(c);
  std::vector<std::string> out;
  for (const auto& s : c.symbols) out.push_back(s.symbol);
  return out;
}

Corpus generate_corpus(int level, const CorpusOptions& opts) {
  if (opts.level_ceiling < 0 || static_cast<std::int64_t>(opts.level_ceiling) + 2 > opts.max_level) {
    throw CorpusError("level ceiling " + std::to_string(opts.level_ceiling) + " exceeds max_level - 2 = " +
                      std::to_string(static_cast<std::int64_t>(opts.max_level) - 2));
  }
  if (level < 0 || level > opts.level_ceiling) {
    throw CorpusError("unsupported level " + std::to_string(level) + " (supported: 0.." +
                      std::to_string(opts.level_ceiling) + ")");
  }
  Corpus c;
  c.level = level;
  TemplateEnv env{{"N", level}, {"T", level + 2}};
  auto emit = [&](const Piece& p, const TemplateEnv& e, std::optional<int> lv) {
    std::string tname = p.template_name + ".hott.in";
    std::string body;
    try {
      body = instantiate(template_source(tname), e);
    } catch (const TemplateError& err) {
      throw CorpusError(tname + ": " + err.what());
    }
    CorpusFile f;
    f.section = p.section;
    f.level = lv;
    f.path = section_dir(p.section) + "/" + (lv ? "level-" + std::to_string(*lv) + "/" : "") + p.out_name + ".hott";
    f.text = header(p.template_name, level) + body;
    f.generality = extract_generality(f.text);
    describe(f);
    if (!f.declarations.empty()) c.files.push_back(std::move(f));
  };
  for (const auto& p : prelude_and_generic()) emit(p, env, std::nullopt);
  for (int n = 0; n <= level; ++n) {
    TemplateEnv e = env;
    e["n"] = n;
    for (const auto& p : level_pieces()) emit(p, e, n);
  }
  add_symbols(c);
  std::set<std::string> declared;
  for (const auto& f : c.files) declared.insert(f.declarations.begin(), f.declarations.end());
  for (const auto& s : c.symbols) {
    if (!declared.contains(s.decl)) throw CorpusError("symbol " + s.symbol + " maps to missing " + s.decl);
  }
  static_tags(c);
  eta_tags(c, opts.max_level);
  return c;
}

std::string manifest_json(const Corpus& corpus) {
  ordered_json j;
  j["format"] = "hlevel-corpus-manifest/1";
  j["level"] = corpus.level;
  j["prelude"] = ordered_json::array();
  j["generic"] = ordered_json::array();
  j["generated"] = ordered_json::array();
  std::map<int, ordered_json> levels;
  for (const auto& f : corpus.files) {
    switch (f.section) {
      case Section::kPrelude: j["prelude"].push_back(file_json(f)); break;
      case Section::kGeneric: j["generic"].push_back(file_json(f)); break;
      case Section::kGenerated: levels[*f.level].push_back(file_json(f)); break;
    }
  }
  for (auto& [lv, files] : levels) {
    ordered_json entry;
    entry["level"] = lv;
    entry["files"] = std::move(files);
    j["generated"].push_back(std::move(entry));
  }
  ordered_json sym = ordered_json::object();
  for (const auto& s : corpus.symbols) sym[s.symbol] = s.decl;
  j["symbols"] = std::move(sym);
  return j.dump(2) + "\n";
}

void write_corpus(const Corpus& corpus, const fs::path& root) {
  std::set<fs::path> wanted;
  for (const auto& f : corpus.files) {
    fs::path p = root / fs::path(f.path);
    wanted.insert(p.lexically_normal());
    write_if_changed(p, f.text);
  }
  write_if_changed(root / "manifest.json", manifest_json(corpus));
  for (const char* dir : {"prelude", "generic", "generated"}) {
    fs::path d = root / dir;
    if (!fs::exists(d)) continue;
    std::vector<fs::path> stale;
    for (const auto& e : fs::recursive_directory_iterator(d)) {
      if (e.is_regular_file() && e.path().extension() == ".hott" && !wanted.contains(e.path().lexically_normal())) {
        stale.push_back(e.path());
      }
    }
    for (const auto& p : stale) fs::remove(p);
    std::vector<fs::path> dirs;
    for (const auto& e : fs::recursive_directory_iterator(d)) {
      if (e.is_directory()) dirs.push_back(e.path());
    }
    std::sort(dirs.rbegin(), dirs.rend());
    for (const auto& p : dirs) {
      if (fs::is_empty(p)) fs::remove(p);
    }
  }
}

Corpus read_corpus(const fs::path& root) {
  ordered_json j;
  try {
    j = ordered_json::parse(read_file(root / "manifest.json"));
  } catch (const nlohmann::json::exception& e) {
    throw CorpusError((root / "manifest.json").string() + ": " + e.what());
  }
  Corpus c;
  try {
    c.level = j.at("level").get<int>();
    auto load = [&](const ordered_json& fj, Section s) {
      CorpusFile f;
      f.path = fj.at("path").get<std::string>();
      f.section = s;
      if (fj.contains("level")) f.level = fj.at("level").get<int>();
      f.generality = fj.value("generality", "");
      f.tags = fj.value("tags", std::vector<std::string>{});
      f.refs = fj.value("refs", std::vector<std::string>{});
      f.declarations = fj.value("declarations", std::vector<std::string>{});
      f.text = read_file(root / fs::path(f.path));
      c.files.push_back(std::move(f));
    };
    for (const auto& f : j.at("prelude")) load(f, Section::kPrelude);
    for (const auto& f : j.at("generic")) load(f, Section::kGeneric);
    for (const auto& lv : j.at("generated")) {
      for (const auto& f : lv.at("files")) load(f, Section::kGenerated);
    }
    for (const auto& [sym, decl] : j.at("symbols").items()) c.symbols.push_back({sym, decl.get<std::string>()});
  } catch (const nlohmann::json::exception& e) {
    throw CorpusError((root / "manifest.json").string() + ": " + e.what());
  }
  return c;
}

bool CorpusReport::ok() const {
  return std::all_of(modules.begin(), modules.end(), [](const ModuleReport& m) { return m.ok(); });
}

const ModuleReport* CorpusReport::module(std::string_view path) const {
  for (const auto& m : modules) {
    if (m.file == path) return &m;
  }
  return nullptr;
}

std::optional<DeclStatus> CorpusReport::status(std::string_view decl) const {
  for (const auto& m : modules) {
    for (const auto& d : m.decls) {
      if (d.name == decl) return d.status;
    }
  }
  return std::nullopt;
}

CorpusReport check_corpus(const Corpus& corpus, const CheckOptions& opts) {
  Globals globals;
  CorpusReport report;
  for (const auto& f : corpus.files) report.modules.push_back(check_module(globals, f.text, f.path, opts));
  return report;
}

}  // namespace hlevel
