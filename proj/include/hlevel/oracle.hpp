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

// Finite-model oracle: exhaustive checks in the groupoid of finite sets and
// bijections. Paths between types are bijections; composition is
// diagrammatic, so compose(p, q) runs p first.

#ifndef HLEVEL_ORACLE_HPP_
#define HLEVEL_ORACLE_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hlevel::oracle {

constexpr std::size_t kDefaultBound = 4;
constexpr std::size_t kMaxBound = 5;

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FinSet {
  std::size_t size = 0;
  std::string label;
};

FinSet fin(std::size_t size);
FinSet two();

struct FinBij {
  FinSet domain;
  FinSet codomain;
  std::vector<std::size_t> mapping;  // mapping[x] is the image of x

  std::size_t operator()(std::size_t x) const { return mapping.at(x); }
  bool operator==(const FinBij& o) const { return mapping == o.mapping; }
  std::string show() const;  // "[1 0]"
};

/// All bijections a -> b in lexicographic order of mapping tables.
/// Throws OracleError when a size exceeds `bound` or the bound exceeds
/// kMaxBound.
std::vector<FinBij> enumerate_bijections(const FinSet& a, const FinSet& b,
                                         std::size_t bound = kDefaultBound);

FinBij identity(const FinSet& a);
FinBij swap();  // the non-identity automorphism of 2
FinBij inverse(const FinBij& p);
/// p then q. Throws OracleError on mismatched sets.
FinBij compose(const FinBij& p, const FinBij& q);

/// Transport of p : Aut(X) along q : X -> Y in the family x |-> Id(x, x),
/// computed by relabelling the graph of p along q.
FinBij transport_loop(const FinBij& q, const FinBij& p);

struct Counterexample {
  std::string law;
  std::string witness;
};

struct Fact {
  std::string name;
  std::string value;
};

struct OracleReport {
  std::string suite;
  std::vector<std::string> models;  // corpus declarations the suite shadows
  std::size_t bound = 0;
  std::size_t cases = 0;
  std::size_t violations = 0;
  /// First witness per violated law.
  std::vector<Counterexample> counterexamples;
  std::vector<Fact> facts;

  bool pass() const { return counterexamples.empty(); }
  std::optional<std::string> fact(std::string_view name) const;
};

using Composition = std::function<FinBij(const FinBij&, const FinBij&)>;

OracleReport check_enumeration(std::size_t bound = kDefaultBound);
OracleReport check_groupoid_laws(std::size_t bound = kDefaultBound,
                                 const Composition& comp = compose);
OracleReport check_transport_conjugation(std::size_t bound = kDefaultBound);
/// `p` is the loop at 2 the witnesses are built over; swap by default.
OracleReport check_K_witnesses(const std::optional<FinBij>& p = std::nullopt);
OracleReport check_sigma_loop_cardinality(std::size_t bound = kDefaultBound);

/// Suite names in report order.
std::vector<std::string> suite_names();

/// Runs every suite, or just `suite`. Throws OracleError on an unknown
/// suite or a bound above kMaxBound.
std::vector<OracleReport> run_suites(const std::optional<std::string>& suite,
                                     std::size_t bound = kDefaultBound);

}  // namespace hlevel::oracle

#endif  // HLEVEL_ORACLE_HPP_
