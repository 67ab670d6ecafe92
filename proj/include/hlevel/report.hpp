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

// JSON reports shared by every CLI command (schema: docs/report-schema.json).

#ifndef HLEVEL_REPORT_HPP_
#define HLEVEL_REPORT_HPP_

#include <string>
#include <string_view>

#include <json.hpp>

#include "hlevel/check.hpp"
#include "hlevel/corpus.hpp"
#include "hlevel/oracle.hpp"

namespace hlevel::report {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaId = "hlevel-report/1";

enum class Status { kPass, kFail, kError };

/// 0, 1, 2.
int exit_code(Status s);
std::string_view to_string(Status s);

struct Options {
  bool timings = false;  // off by default so reports are byte-stable
};

struct LineCol {
  std::size_t line = 1, column = 1;
};
/// 1-based line and column (in bytes) of `offset` in `source`.
LineCol line_col(std::string_view source, std::size_t offset);

Json diagnostic(const Diagnostic& d, std::string_view source);
Json module(const ModuleReport& m, std::string_view source, const Options& opts = {});
Json suite(const oracle::OracleReport& r);
Json generated_file(const CorpusFile& f);

/// The common envelope; command-specific fields are appended by callers.
Json envelope(std::string_view command, Status status);
Json error(std::string_view code, std::string_view message, std::string_view file = {});

/// Pass iff every module is ok.
Status status_of(const std::vector<ModuleReport>& modules);

}  // namespace hlevel::report

#endif  // HLEVEL_REPORT_HPP_
