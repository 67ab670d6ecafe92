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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hlevel/cli.hpp"
#include "json.hpp"
#include "test_util.hpp"

namespace hlevel {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  CliRun r = run(args);
  json j = json::parse(r.out);
  EXPECT_EQ(j.at("exit_code").get<int>(), r.code);
  return j;
}

class TempDir {
 public:
  TempDir() {
    static int n = 0;
    path_ = fs::temp_directory_path() / ("hlevel-cli-" + std::to_string(::getpid()) + "-" + std::to_string(n++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

std::string corpus_file(const std::string& rel) { return (testing::source_dir() / "corpus" / rel).string(); }

std::vector<std::string> prelude_files() {
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(testing::source_dir() / "corpus" / "prelude")) {
    files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> m;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) m[fs::relative(e.path(), root).generic_string()] = testing::read_file(e.path());
  }
  return m;
}

TEST(CliCheck, PreludeIsAccepted) {
  std::vector<std::string> args = {"check"};
  for (auto& f : prelude_files()) args.push_back(f);
  CliRun r = run(args);
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(CliCheck, ManifestExpandsToTheCorpus) {
  json j = run_json({"check", corpus_file("manifest.json")});
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["modules"].size(), testing::corpus(2).files.size());
}

TEST(CliCheck, TypeInTypeIsRejected) {
  TempDir d;
  std::string f = d.write("bad.hott", "goal g : U0 := U0\n");
  EXPECT_EQ(run({"check", f}).code, 1);
  json j = run_json({"check", f});
  EXPECT_EQ(j["status"], "fail");
  const auto& decl = j["modules"][0]["declarations"][0];
  EXPECT_EQ(decl["name"], "g");
  EXPECT_EQ(decl["status"], "rejected");
  EXPECT_EQ(decl["diagnostics"][0]["span"]["line"], 1);
}

TEST(CliCheck, EnvironmentalErrors) {
  EXPECT_EQ(run({"check", "/nonexistent/file.hott"}).code, 2);
  TempDir d;
  EXPECT_EQ(run({"check", d.write("parse.hott", "def x : := 0\n")}).code, 2);
  EXPECT_EQ(run({"check"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  json j = run_json({"check", "/nonexistent/file.hott"});
  EXPECT_EQ(j["status"], "error");
  EXPECT_FALSE(j["errors"].empty());
}

TEST(CliCheck, MaxLevelBoundsUniverses) {
  TempDir d;
  std::string f = d.write("u.hott", "def t : U3 := U2\n");
  EXPECT_EQ(run({"check", f}).code, 0);
  EXPECT_EQ(run({"--max-level", "2", "check", f}).code, 1);
}

TEST(CliCheck, EtaSigmaFlag) {
  TempDir d;
  std::string f = d.write("eta.hott", "goal e (p : Nat * Nat) : Id (Nat * Nat) p (p.1, p.2) := refl p\n");
  EXPECT_EQ(run({"check", f}).code, 0);
  EXPECT_EQ(run({"--no-eta-sigma", "check", f}).code, 1);
}

TEST(CliCheck, ReportsAreDeterministicWithoutTimings) {
  std::vector<std::string> args = {"check", corpus_file("manifest.json")};
  json a = run_json(args), b = run_json(args);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a.dump().find("\"ms\""), std::string::npos);
  args.insert(args.begin(), "--timings");
  EXPECT_NE(run_json(args).dump().find("\"ms\""), std::string::npos);
}

TEST(CliNormalize, Examples) {
  auto prelude = prelude_files();
  auto normalize = [&](const std::string& name) {
    std::vector<std::string> args = {"normalize"};
    args.insert(args.end(), prelude.begin(), prelude.end());
    args.insert(args.end(), {"--name", name});
    return run(args);
  };
  CliRun one = normalize("swap-swap-one");
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, "1₂\n");
  EXPECT_EQ(normalize("two-plus-two").out, "4\n");

  // Axioms do not compute: the normal form stays headed by ua.
  CliRun stuck = normalize("swap-path");
  EXPECT_EQ(stuck.code, 0);
  EXPECT_EQ(stuck.out.rfind("fst (fst (ua@0 Two Two))", 0), 0u) << stuck.out;

  EXPECT_EQ(normalize("no-such-definition").code, 2);
}

TEST(CliNormalize, JsonCarriesTheNormalForm) {
  json j = run_json({"normalize", corpus_file("prelude/01-base.hott"), "--name", "swap-swap-one"});
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["normal_form"]["name"], "swap-swap-one");
  EXPECT_EQ(j["normal_form"]["type"], "Two");
  EXPECT_EQ(j["normal_form"]["term"], "1₂");
}

TEST(CliNormalize, FailingPrerequisiteIsALogicalRejection) {
  TempDir d;
  std::string f = d.write("pre.hott", "goal bad : U0 := U0\ndef one : Nat := 1\n");
  EXPECT_EQ(run({"normalize", f, "--name", "one"}).code, 1);
}

TEST(CliGen, LevelOneTwiceIsByteIdentical) {
  TempDir d;
  std::string out = (d.path() / "c").string();
  ASSERT_EQ(run({"gen", "--level", "1", "--out", out}).code, 0);
  auto first = snapshot(out);
  ASSERT_EQ(run({"gen", "--level", "1", "--out", out}).code, 0);
  EXPECT_EQ(first, snapshot(out));
  EXPECT_TRUE(first.count("generated/level-1/03-chain.hott"));
  const std::string& chain = first["generated/level-1/03-chain.hott"];
  for (const char* name : {"def K ", "def alpha ", "def beta "}) {
    EXPECT_NE(chain.find(name), std::string::npos) << name;
  }
  EXPECT_EQ(run({"check", out + "/manifest.json"}).code, 0);
}

TEST(CliGen, LevelZeroEmitsOnlyLevelZero) {
  TempDir d;
  std::string out = (d.path() / "c").string();
  json j = run_json({"gen", "--level", "0", "--out", out});
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["generated"]["level"], 0);
  EXPECT_TRUE(fs::exists(fs::path(out) / "generated/level-0/03-chain.hott"));
  EXPECT_FALSE(fs::exists(fs::path(out) / "generated/level-1"));
}

TEST(CliGen, UnsupportedLevel) {
  TempDir d;
  EXPECT_EQ(run({"gen", "--level", "3", "--out", d.path().string()}).code, 2);
  EXPECT_EQ(run({"gen", "--out", d.path().string()}).code, 2);
}

TEST(CliOracle, AllSuitesPass) {
  json j = run_json({"oracle", "--bound", "4"});
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["suites"].size(), 5u);
}

TEST(CliOracle, SingleSuite) {
  json j = run_json({"oracle", "--suite", "transport-conjugation"});
  ASSERT_EQ(j["suites"].size(), 1u);
  EXPECT_EQ(j["suites"][0]["suite"], "transport-conjugation");
}

TEST(CliOracle, Errors) {
  EXPECT_EQ(run({"oracle", "--bound", "99"}).code, 2);
  json j = run_json({"oracle", "--suite", "nope"});
  EXPECT_EQ(j["status"], "error");
}

}  // namespace
}  // namespace hlevel
