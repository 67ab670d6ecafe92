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


#include "hlevel/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hlevel/check.hpp"
#include "hlevel/corpus.hpp"
#include "hlevel/oracle.hpp"
#include "hlevel/report.hpp"

namespace hlevel {
namespace {

namespace fs = std::filesystem;
using report::Json;
using report::Status;

struct Config {
  std::string format = "text";
  bool no_eta_sigma = false;
  std::optional<std::uint32_t> max_level;
  bool timings = false;
  std::vector<std::string> inputs;
  std::string name;
  int level = 0;
  std::string out_dir = "corpus";
  int level_ceiling = kDefaultLevelCeiling;
  std::optional<std::string> suite;
  std::size_t bound = oracle::kDefaultBound;

  bool json() const { return format == "json"; }
  CheckOptions check_options() const {
    CheckOptions o;
    o.max_level = max_level.value_or(max_level_from_env());
    o.eta_sigma = !no_eta_sigma;
    return o;
  }
};

struct Source {
  std::string file;
  std::string text;
};

class Io {
 public:
  Io(const Config& cfg, std::string command, std::ostream& out, std::ostream& err)
      : cfg_(cfg), command_(std::move(command)), out_(out), err_(err) {}

  void error(std::string_view code, const std::string& message, std::string_view file = {}) {
    errors_.push_back(report::error(code, message, file));
    if (!cfg_.json()) err_ << "hlevel " << command_ << ": " << (file.empty() ? "" : std::string(file) + ": ")
                           << message << "\n";
  }
  bool has_errors() const { return !errors_.empty(); }
  std::ostream& text() { return out_; }

  /// Prints the JSON document (in json mode) and returns the exit code.
  int finish(Status status, Json extra = Json::object()) {
    if (has_errors()) status = Status::kError;
    if (cfg_.json()) {
      Json doc = report::envelope(command_, status);
      doc["errors"] = errors_;
      for (auto& [k, v] : extra.items()) doc[k] = v;
      out_ << doc.dump(2) << "\n";
    }
    return report::exit_code(status);
  }

 private:
  const Config& cfg_;
  std::string command_;
  std::ostream& out_;
  std::ostream& err_;
  Json errors_ = Json::array();
};

std::optional<std::string> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in || fs::is_directory(p)) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Reads the inputs, expanding manifest.json into the corpus it lists.
std::vector<Source> load_inputs(const Config& cfg, Io& io) {
  std::vector<Source> out;
  for (const std::string& in : cfg.inputs) {
    fs::path p(in);
    if (p.filename() == "manifest.json") {
      try {
        Corpus c = read_corpus(p.parent_path().empty() ? fs::path(".") : p.parent_path());
        for (auto& f : c.files) out.push_back({(p.parent_path() / f.path).generic_string(), std::move(f.text)});
      } catch (const CorpusError& e) {
        io.error("io", e.what(), in);
      }
      continue;
    }
    if (auto text = slurp(p)) {
      out.push_back({in, std::move(*text)});
    } else {
      io.error("io", "cannot read file", in);
    }
  }
  return out;
}

void print_module_text(std::ostream& os, const ModuleReport& m, std::string_view source) {
  if (m.ok()) {
    os << "ok    " << m.file << " (" << m.accepted() << " declarations)\n";
    return;
  }
  os << "FAIL  " << m.file << " (" << m.accepted() << " accepted, " << m.rejected() << " rejected)\n";
  auto line = [&](const Diagnostic& d, std::string_view decl) {
    report::LineCol lc = report::line_col(source, d.span.begin);
    os << "  " << m.file << ":" << lc.line << ":" << lc.column << ": error[" << d.code << "]";
    if (!decl.empty()) os << " " << decl;
    os << ": " << d.message << "\n";
  };
  for (const auto& d : m.diagnostics) line(d, "");
  for (const auto& d : m.decls) {
    for (const auto& diag : d.diagnostics) line(diag, d.name);
  }
}

// Checks the inputs into `g`; returns the modules and the overall status.
Status check_sources(const Config& cfg, Io& io, Globals& g, const std::vector<Source>& sources, Json& modules) {
  CheckOptions opts = cfg.check_options();
  report::Options ropts{cfg.timings};
  std::vector<ModuleReport> reports;
  modules = Json::array();
  bool parse_failed = false;
  for (const Source& s : sources) {
    ModuleReport m = check_module(g, s.text, s.file, opts);
    if (!m.diagnostics.empty()) parse_failed = true;
    if (!cfg.json()) print_module_text(io.text(), m, s.text);
    modules.push_back(report::module(m, s.text, ropts));
    reports.push_back(std::move(m));
  }
  if (parse_failed) return Status::kError;
  return report::status_of(reports);
}

int cmd_check(const Config& cfg, Io& io) {
  std::vector<Source> sources = load_inputs(cfg, io);
  if (io.has_errors()) return io.finish(Status::kError, {{"modules", Json::array()}});
  Globals g;
  Json modules;
  Status st = check_sources(cfg, io, g, sources, modules);
  if (!cfg.json()) {
    std::size_t acc = 0, rej = 0;
    for (const auto& m : modules) {
      acc += m["accepted"].get<std::size_t>();
      rej += m["rejected"].get<std::size_t>();
    }
    io.text() << (st == Status::kPass ? "ok: " : "FAILED: ") << sources.size() << " files, " << acc
              << " accepted, " << rej << " rejected\n";
  }
  return io.finish(st, {{"modules", modules}});
}

int cmd_normalize(const Config& cfg, Io& io) {
  std::vector<Source> sources = load_inputs(cfg, io);
  if (io.has_errors()) return io.finish(Status::kError, {{"modules", Json::array()}});
  Globals g;
  Json modules;
  Config quiet = cfg;
  quiet.format = "json";  // keep per-module lines out of the normal-form output
  Status st = check_sources(quiet, io, g, sources, modules);
  Json extra{{"modules", modules}};
  if (st != Status::kPass) {
    if (!cfg.json()) io.text() << "normalize: prerequisites failed to check\n";
    return io.finish(st, extra);
  }
  const GlobalEntry* e = g.find(cfg.name);
  if (!e) {
    io.error("unknown-name", "no checked definition named '" + cfg.name + "'");
    return io.finish(Status::kError, extra);
  }
  TermPtr term = e->decl.body ? normalize(g, e->decl.body) : make_term(core::AxiomRef{e->decl.name});
  std::string nf = print(term);
  std::string ty = print(normalize(g, e->decl.type));
  if (!cfg.json()) io.text() << nf << "\n";
  extra["normal_form"] = {{"name", cfg.name}, {"type", ty}, {"term", nf}};
  return io.finish(Status::kPass, extra);
}

int cmd_gen(const Config& cfg, Io& io) {
  CorpusOptions opts;
  opts.max_level = cfg.check_options().max_level;
  opts.level_ceiling = cfg.level_ceiling;
  Corpus c;
  try {
    c = generate_corpus(cfg.level, opts);
    write_corpus(c, cfg.out_dir);
  } catch (const CorpusError& e) {
    io.error("gen", e.what());
    return io.finish(Status::kError);
  }
  Json files = Json::array();
  for (const auto& f : c.files) {
    files.push_back(report::generated_file(f));
    if (!cfg.json()) {
      io.text() << "wrote " << (fs::path(cfg.out_dir) / f.path).generic_string();
      if (!f.tags.empty()) {
        io.text() << " [";
        for (std::size_t i = 0; i < f.tags.size(); ++i) io.text() << (i ? " " : "") << f.tags[i];
        io.text() << "]";
      }
      io.text() << "\n";
    }
  }
  if (!cfg.json()) {
    io.text() << "wrote " << (fs::path(cfg.out_dir) / "manifest.json").generic_string() << " (level " << c.level
              << ", " << c.symbols.size() << " symbols)\n";
  }
  Json gen{{"level", c.level}, {"root", cfg.out_dir}, {"files", files}};
  return io.finish(Status::kPass, {{"generated", gen}});
}

int cmd_oracle(const Config& cfg, Io& io) {
  std::vector<oracle::OracleReport> reports;
  try {
    reports = oracle::run_suites(cfg.suite, cfg.bound);
  } catch (const oracle::OracleError& e) {
    io.error("oracle", e.what());
    return io.finish(Status::kError, {{"suites", Json::array()}});
  }
  Json suites = Json::array();
  bool pass = true;
  for (const auto& r : reports) {
    pass = pass && r.pass();
    suites.push_back(report::suite(r));
    if (cfg.json()) continue;
    std::ostream& os = io.text();
    os << (r.pass() ? "PASS  " : "FAIL  ") << r.suite << " (bound " << r.bound << ", " << r.cases << " cases)";
    os << " models";
    for (const auto& m : r.models) os << " " << m;
    os << "\n";
    for (const auto& f : r.facts) os << "  " << f.name << " = " << f.value << "\n";
    for (const auto& c : r.counterexamples) os << "  counterexample " << c.law << ": " << c.witness << "\n";
  }
  return io.finish(pass ? Status::kPass : Status::kFail, {{"suites", suites}});
}

std::string sniff_format(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--format=json" || (args[i] == "--format" && i + 1 < args.size() && args[i + 1] == "json")) {
      return "json";
    }
  }
  return "text";
}

std::string sniff_command(const std::vector<std::string>& args) {
  for (const auto& a : args) {
    if (a == "check" || a == "normalize" || a == "gen" || a == "oracle") return a;
  }
  return "hlevel";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"hlevel: a minimal univalent type-theory kernel with a generated proof corpus", "hlevel"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--no-eta-sigma", cfg.no_eta_sigma, "Disable definitional eta for pairs");
  app.add_option("--max-level", cfg.max_level, "Largest universe index (default 8, or $HLEVEL_MAX_LEVEL)");
  app.add_flag("--timings", cfg.timings, "Include timings in JSON reports");

  CLI::App* check = app.add_subcommand("check", "Check .hott files (manifest.json expands to its corpus)");
  check->add_option("files", cfg.inputs, "Input files")->required();

  CLI::App* norm = app.add_subcommand("normalize", "Print the normal form of a definition");
  norm->add_option("files", cfg.inputs, "Input files")->required();
  norm->add_option("--name", cfg.name, "Definition to normalize")->required();

  CLI::App* gen = app.add_subcommand("gen", "Generate the proof corpus up to a level");
  gen->add_option("--level", cfg.level, "Highest generated level")->required();
  gen->add_option("--out", cfg.out_dir, "Corpus root directory")->capture_default_str();
  gen->add_option("--level-ceiling", cfg.level_ceiling, "Highest level accepted")->capture_default_str();

  CLI::App* orc = app.add_subcommand("oracle", "Run the finite-model oracle");
  orc->add_option("--suite", cfg.suite, "Run a single suite");
  orc->add_option("--bound", cfg.bound, "Largest set size")->capture_default_str();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    cfg.format = sniff_format(args);
    Io io(cfg, sniff_command(args), out, err);
    io.error("usage", e.what());
    return io.finish(Status::kError);
  }

  if (check->parsed()) {
    Io io(cfg, "check", out, err);
    return cmd_check(cfg, io);
  }
  if (norm->parsed()) {
    Io io(cfg, "normalize", out, err);
    return cmd_normalize(cfg, io);
  }
  if (gen->parsed()) {
    Io io(cfg, "gen", out, err);
    return cmd_gen(cfg, io);
  }
  Io io(cfg, "oracle", out, err);
  return cmd_oracle(cfg, io);
}

}  // namespace hlevel
