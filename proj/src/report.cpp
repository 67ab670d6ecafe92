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

#include "hlevel/report.hpp"

#include <algorithm>

namespace hlevel::report {

int exit_code(Status s) {
  switch (s) {
    case Status::kPass: return 0;
    case Status::kFail: return 1;
    case Status::kError: return 2;
  }
  return 2;
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kError: return "error";
  }
  return "error";
}

LineCol line_col(std::string_view source, std::size_t offset) {
  offset = std::min(offset, source.size());
  LineCol lc;
  for (std::size_t i = 0; i < offset; ++i) {
    if (source[i] == '\n') {
      ++lc.line;
      lc.column = 1;
    } else {
      ++lc.column;
    }
  }
  return lc;
}

Json diagnostic(const Diagnostic& d, std::string_view source) {
  LineCol lc = line_col(source, d.span.begin);
  Json j;
  j["severity"] = d.severity == Severity::kError ? "error" : "warning";
  j["code"] = d.code;
  j["message"] = d.message;
  j["span"] = {{"begin", d.span.begin}, {"end", d.span.end}, {"line", lc.line}, {"column", lc.column}};
  return j;
}

Json module(const ModuleReport& m, std::string_view source, const Options& opts) {
  Json j;
  j["file"] = m.file;
  j["status"] = m.ok() ? "pass" : "fail";
  j["accepted"] = m.accepted();
  j["rejected"] = m.rejected();
  j["diagnostics"] = Json::array();
  for (const auto& d : m.diagnostics) j["diagnostics"].push_back(diagnostic(d, source));
  j["declarations"] = Json::array();
  for (const auto& d : m.decls) {
    Json dj;
    dj["name"] = d.name;
    dj["kind"] = std::string(to_string(d.kind));
    dj["status"] = d.status == DeclStatus::kAccepted ? "accepted" : "rejected";
    if (!d.provenance.empty()) dj["ref"] = d.provenance;
    dj["diagnostics"] = Json::array();
    for (const auto& diag : d.diagnostics) dj["diagnostics"].push_back(diagnostic(diag, source));
    if (opts.timings) dj["ms"] = d.ms;
    j["declarations"].push_back(std::move(dj));
  }
  if (opts.timings) j["ms"] = m.ms;
  return j;
}

Json suite(const oracle::OracleReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["status"] = r.pass() ? "pass" : "fail";
  j["models"] = r.models;
  j["bound"] = r.bound;
  j["cases"] = r.cases;
  j["violations"] = r.violations;
  j["counterexamples"] = Json::array();
  for (const auto& c : r.counterexamples) j["counterexamples"].push_back({{"law", c.law}, {"witness", c.witness}});
  j["facts"] = Json::array();
  for (const auto& f : r.facts) j["facts"].push_back({{"name", f.name}, {"value", f.value}});
  return j;
}

Json generated_file(const CorpusFile& f) {
  Json j;
  j["path"] = f.path;
  j["section"] = std::string(to_string(f.section));
  if (f.level) j["level"] = *f.level;
  j["declarations"] = f.declarations.size();
  j["tags"] = f.tags;
  return j;
}

Json envelope(std::string_view command, Status status) {
  Json j;
  j["schema"] = kSchemaId;
  j["command"] = command;
  j["status"] = to_string(status);
  j["exit_code"] = exit_code(status);
  j["errors"] = Json::array();
  return j;
}

Json error(std::string_view code, std::string_view message, std::string_view file) {
  Json j;
  j["code"] = code;
  j["message"] = message;
  if (!file.empty()) j["file"] = file;
  return j;
}

Status status_of(const std::vector<ModuleReport>& modules) {
  for (const auto& m : modules) {
    if (!m.ok()) return Status::kFail;
  }
  return Status::kPass;
}

}  // namespace hlevel::report
