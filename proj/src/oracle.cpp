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

#include "hlevel/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace hlevel::oracle {
namespace {

void check_bound(std::size_t bound) {
  if (bound > kMaxBound) {
    throw OracleError("bound " + std::to_string(bound) + " exceeds the maximum " +
                      std::to_string(kMaxBound));
  }
}

// Records violations, keeping the first witness of each law.
class Tally {
 public:
  explicit Tally(OracleReport& r) : r_(r) {}

  void expect(bool ok, const std::string& law, const std::function<std::string()>& witness) {
    ++r_.cases;
    if (ok) return;
    ++r_.violations;
    if (seen_.insert(law).second) r_.counterexamples.push_back({law, witness()});
  }

 private:
  OracleReport& r_;
  std::set<std::string> seen_;
};

std::string show_all(std::initializer_list<const FinBij*> ps) {
  std::string s;
  const char* names[] = {"p", "q", "r"};
  std::size_t i = 0;
  for (const FinBij* p : ps) {
    if (i) s += ' ';
    s += std::string(names[i++]) + "=" + p->show();
  }
  return s;
}

std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

// ---------------------------------------------------------------------------
// Finite groupoids with explicit morphism tables, for the Σ/Ω shadow.

struct Groupoid {
  std::string label;
  std::vector<std::string> objects;
  struct Mor {
    std::size_t src, tgt;
    std::string name;
  };
  std::vector<Mor> mors;
  std::vector<std::size_t> ids;           // ids[x]
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp;  // diagrammatic

  std::vector<std::size_t> hom(std::size_t x, std::size_t y) const {
    std::vector<std::size_t> out;
    for (std::size_t m = 0; m < mors.size(); ++m) {
      if (mors[m].src == x && mors[m].tgt == y) out.push_back(m);
    }
    return out;
  }
  std::size_t then(std::size_t f, std::size_t g) const { return comp.at({f, g}); }
};

// A set as a discrete groupoid.
Groupoid discrete(const FinSet& s) {
  Groupoid g;
  g.label = s.label;
  for (std::size_t x = 0; x < s.size; ++x) {
    g.objects.push_back(std::to_string(x));
    g.ids.push_back(x);
    g.mors.push_back({x, x, "refl"});
  }
  for (std::size_t x = 0; x < s.size; ++x) g.comp[{x, x}] = x;
  return g;
}

// The component of the universe at s: one object, loops are bijections.
Groupoid baut(const FinSet& s, std::size_t bound, std::vector<FinBij>* loops = nullptr) {
  Groupoid g;
  g.label = "BAut(" + s.label + ")";
  g.objects.push_back(s.label);
  std::vector<FinBij> ps = enumerate_bijections(s, s, bound);
  for (const FinBij& p : ps) g.mors.push_back({0, 0, p.show()});
  auto index = [&](const FinBij& p) {
    return static_cast<std::size_t>(std::find(ps.begin(), ps.end(), p) - ps.begin());
  };
  g.ids.push_back(index(identity(s)));
  for (std::size_t a = 0; a < ps.size(); ++a) {
    for (std::size_t b = 0; b < ps.size(); ++b) g.comp[{a, b}] = index(compose(ps[a], ps[b]));
  }
  if (loops) *loops = std::move(ps);
  return g;
}

struct Functor {
  std::vector<std::size_t> obj;
  std::vector<std::size_t> mor;
};

Functor identity_functor(const Groupoid& g) {
  Functor f;
  f.obj.resize(g.objects.size());
  std::iota(f.obj.begin(), f.obj.end(), 0);
  f.mor.resize(g.mors.size());
  std::iota(f.mor.begin(), f.mor.end(), 0);
  return f;
}

// A pointed family over a pointed groupoid.
struct Family {
  std::string label;
  std::vector<Groupoid> fibre;  // per object of the base
  std::vector<Functor> action;  // per morphism of the base
  std::size_t base_point = 0;
  std::size_t fibre_point = 0;
};

Family constant(const Groupoid& base, const Groupoid& f, std::size_t point) {
  Family fam;
  fam.label = "const " + f.label;
  fam.fibre.assign(base.objects.size(), f);
  fam.action.assign(base.mors.size(), identity_functor(f));
  fam.fibre_point = point;
  return fam;
}

// x |-> x over BAut(s): the fibre is s itself, transported along the loop.
Family tautological(const FinSet& s, const std::vector<FinBij>& loops, std::size_t point) {
  Family fam;
  fam.label = "El";
  Groupoid f = discrete(s);
  fam.fibre.push_back(f);
  for (const FinBij& p : loops) fam.action.push_back({p.mapping, p.mapping});
  fam.fibre_point = point;
  return fam;
}

struct Instance {
  std::string name;
  std::size_t needs;  // largest set size involved
  Groupoid base;
  std::size_t base_point;
  Family family;
};

// Σ of a family as the Grothendieck groupoid: objects (x, u), morphisms
// (f, φ) with φ : P(f)(u) -> v in the fibre over the target.
struct SigmaMor {
  std::size_t f, phi;
  std::size_t src, tgt;  // indices into objects
};

struct Sigma {
  std::vector<std::pair<std::size_t, std::size_t>> objects;
  std::vector<SigmaMor> mors;
};

Sigma sigma(const Groupoid& base, const Family& fam) {
  Sigma s;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> at;
  for (std::size_t x = 0; x < base.objects.size(); ++x) {
    for (std::size_t u = 0; u < fam.fibre[x].objects.size(); ++u) {
      at[{x, u}] = s.objects.size();
      s.objects.push_back({x, u});
    }
  }
  for (std::size_t f = 0; f < base.mors.size(); ++f) {
    std::size_t x = base.mors[f].src, y = base.mors[f].tgt;
    const Groupoid& py = fam.fibre[y];
    for (std::size_t u = 0; u < fam.fibre[x].objects.size(); ++u) {
      std::size_t fu = fam.action[f].obj[u];
      for (std::size_t phi = 0; phi < py.mors.size(); ++phi) {
        if (py.mors[phi].src != fu) continue;
        s.mors.push_back({f, phi, at.at({x, u}), at.at({y, py.mors[phi].tgt})});
      }
    }
  }
  return s;
}

// (f, φ) then (g, ψ) = (f·g, P(g)(φ)·ψ); nullopt if P is not functorial
// enough for the result to exist.
std::optional<std::size_t> sigma_then(const Sigma& s, const Groupoid& base, const Family& fam,
                                      std::size_t a, std::size_t b) {
  const SigmaMor& m = s.mors[a];
  const SigmaMor& n = s.mors[b];
  std::size_t fg = base.then(m.f, n.f);
  const Groupoid& pz = fam.fibre[base.mors[n.f].tgt];
  std::size_t moved = fam.action[n.f].mor[m.phi];
  auto it = pz.comp.find({moved, n.phi});
  if (it == pz.comp.end()) return std::nullopt;
  for (std::size_t k = 0; k < s.mors.size(); ++k) {
    if (s.mors[k].f == fg && s.mors[k].phi == it->second && s.mors[k].src == m.src) return k;
  }
  return std::nullopt;
}

std::vector<Instance> sigma_instances(std::size_t bound) {
  std::vector<Instance> out;
  FinSet t = two(), one = fin(1), three = fin(3);
  auto add = [&](std::string name, std::size_t needs, auto build) {
    if (needs <= bound) out.push_back(build(std::move(name), needs));
  };
  add("(2,0) with const 1", 2, [&](std::string n, std::size_t k) {
    Groupoid a = discrete(t);
    return Instance{n, k, a, 0, constant(a, discrete(one), 0)};
  });
  add("(2,0) with const (2,0)", 2, [&](std::string n, std::size_t k) {
    Groupoid a = discrete(t);
    return Instance{n, k, a, 0, constant(a, discrete(t), 0)};
  });
  add("(3,0) with const (2,0)", 3, [&](std::string n, std::size_t k) {
    Groupoid a = discrete(three);
    return Instance{n, k, a, 0, constant(a, discrete(t), 0)};
  });
  add("(U,2) with El at 0", 2, [&](std::string n, std::size_t k) {
    std::vector<FinBij> loops;
    Groupoid a = baut(t, bound, &loops);
    return Instance{n, k, a, 0, tautological(t, loops, 0)};
  });
  add("(U,2) with const (2,0)", 2, [&](std::string n, std::size_t k) {
    Groupoid a = baut(t, bound);
    return Instance{n, k, a, 0, constant(a, discrete(t), 0)};
  });
  add("(U,2) with const (U,2)", 2, [&](std::string n, std::size_t k) {
    Groupoid a = baut(t, bound);
    return Instance{n, k, a, 0, constant(a, baut(t, bound), 0)};
  });
  add("(U,3) with El at 0", 3, [&](std::string n, std::size_t k) {
    std::vector<FinBij> loops;
    Groupoid a = baut(three, bound, &loops);
    return Instance{n, k, a, 0, tautological(three, loops, 0)};
  });
  add("(U,3) with const (2,0)", 3, [&](std::string n, std::size_t k) {
    Groupoid a = baut(three, bound);
    return Instance{n, k, a, 0, constant(a, discrete(t), 0)};
  });
  return out;
}

}  // namespace

FinSet fin(std::size_t size) { return FinSet{size, std::to_string(size)}; }
FinSet two() { return FinSet{2, "2"}; }

std::string FinBij::show() const {
  std::string s = "[";
  for (std::size_t i = 0; i < mapping.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(mapping[i]);
  }
  return s + "]";
}

std::optional<std::string> OracleReport::fact(std::string_view name) const {
  for (const Fact& f : facts) {
    if (f.name == name) return f.value;
  }
  return std::nullopt;
}

std::vector<FinBij> enumerate_bijections(const FinSet& a, const FinSet& b, std::size_t bound) {
  check_bound(bound);
  for (const FinSet* s : {&a, &b}) {
    if (s->size > bound) {
      throw OracleError("set '" + s->label + "' of size " + std::to_string(s->size) +
                        " exceeds the bound " + std::to_string(bound));
    }
  }
  std::vector<FinBij> out;
  if (a.size != b.size) return out;
  std::vector<std::size_t> m(a.size);
  std::iota(m.begin(), m.end(), 0);
  do {
    out.push_back(FinBij{a, b, m});
  } while (std::next_permutation(m.begin(), m.end()));
  return out;
}

FinBij identity(const FinSet& a) {
  FinBij p{a, a, std::vector<std::size_t>(a.size)};
  std::iota(p.mapping.begin(), p.mapping.end(), 0);
  return p;
}

FinBij swap() { return FinBij{two(), two(), {1, 0}}; }

FinBij inverse(const FinBij& p) {
  FinBij r{p.codomain, p.domain, std::vector<std::size_t>(p.mapping.size())};
  for (std::size_t x = 0; x < p.mapping.size(); ++x) r.mapping[p.mapping[x]] = x;
  return r;
}

FinBij compose(const FinBij& p, const FinBij& q) {
  if (p.codomain.size != q.domain.size) throw OracleError("composing mismatched bijections");
  FinBij r{p.domain, q.codomain, std::vector<std::size_t>(p.mapping.size())};
  for (std::size_t x = 0; x < p.mapping.size(); ++x) r.mapping[x] = q(p(x));
  return r;
}

FinBij transport_loop(const FinBij& q, const FinBij& p) {
  if (p.domain.size != q.domain.size) throw OracleError("transport along a mismatched path");
  FinBij r{q.codomain, q.codomain, std::vector<std::size_t>(p.mapping.size())};
  for (std::size_t x = 0; x < p.mapping.size(); ++x) r.mapping[q(x)] = q(p(x));
  return r;
}

OracleReport check_enumeration(std::size_t bound) {
  check_bound(bound);
  OracleReport r;
  r.suite = "bijection-enumeration";
  r.models = {"univ0-not-set", "s2-pt-eq"};
  r.bound = bound;
  Tally t(r);
  for (std::size_t n = 0; n <= bound; ++n) {
    for (std::size_t m = 0; m <= bound; ++m) {
      std::vector<FinBij> ps = enumerate_bijections(fin(n), fin(m), bound);
      std::size_t want = n == m ? factorial(n) : 0;
      t.expect(ps.size() == want, "count", [&] {
        return "|Bij(" + std::to_string(n) + "," + std::to_string(m) + ")| = " +
               std::to_string(ps.size()) + ", expected " + std::to_string(want);
      });
      t.expect(std::is_sorted(ps.begin(), ps.end(),
                              [](const FinBij& a, const FinBij& b) { return a.mapping < b.mapping; }),
               "lexicographic", [&] { return "Bij(" + std::to_string(n) + "," + std::to_string(m) + ")"; });
      std::set<std::vector<std::size_t>> distinct;
      for (const FinBij& p : ps) distinct.insert(p.mapping);
      t.expect(distinct.size() == ps.size(), "duplicate-free",
               [&] { return "Bij(" + std::to_string(n) + "," + std::to_string(m) + ")"; });
      for (const FinBij& p : ps) {
        std::set<std::size_t> image(p.mapping.begin(), p.mapping.end());
        bool bij = image.size() == n && (n == 0 || *image.rbegin() == m - 1);
        t.expect(bij, "bijective", [&] { return p.show(); });
        // Paths in the model are these bijections, and idtoeqv is the
        // identity on them: composition and inverse are those of maps.
        t.expect(compose(p, inverse(p)) == identity(fin(n)), "path-inverse", [&] { return p.show(); });
      }
      if (n == m) r.facts.push_back({"|Bij(" + std::to_string(n) + "," + std::to_string(n) + ")|",
                                     std::to_string(ps.size())});
    }
  }
  if (bound >= 2) {
    std::vector<FinBij> auts = enumerate_bijections(two(), two(), bound);
    r.facts.push_back({"Aut(2)", auts.size() == 2 ? auts[0].show() + " " + auts[1].show() : "?"});
    t.expect(auts.size() == 2 && !(auts[0] == auts[1]), "two-automorphisms", [] { return "Aut(2)"; });
  }
  return r;
}

OracleReport check_groupoid_laws(std::size_t bound, const Composition& comp) {
  check_bound(bound);
  OracleReport r;
  r.suite = "groupoid-laws";
  r.models = {"assoc@0", "runit@0", "linv@0", "rinv@0"};
  r.bound = bound;
  Tally t(r);
  for (std::size_t n = 0; n <= bound; ++n) {
    FinSet s = fin(n);
    FinBij id = identity(s);
    std::vector<FinBij> ps = enumerate_bijections(s, s, bound);
    for (const FinBij& p : ps) {
      t.expect(comp(id, p) == p, "left-identity", [&] { return show_all({&p}); });
      t.expect(comp(p, id) == p, "right-identity", [&] { return show_all({&p}); });
      FinBij pi = inverse(p);
      t.expect(comp(p, pi) == id, "right-inverse", [&] { return show_all({&p}); });
      t.expect(comp(pi, p) == id, "left-inverse", [&] { return show_all({&p}); });
      for (const FinBij& q : ps) {
        FinBij pq = comp(p, q);
        for (const FinBij& w : ps) {
          t.expect(comp(pq, w) == comp(p, comp(q, w)), "associativity",
                   [&] { return show_all({&p, &q, &w}); });
        }
      }
    }
  }
  return r;
}

OracleReport check_transport_conjugation(std::size_t bound) {
  check_bound(bound);
  OracleReport r;
  r.suite = "transport-conjugation";
  r.models = {"transport-loop@1", "transport-self@1", "K-fib-retract"};
  r.bound = bound;
  Tally t(r);
  for (std::size_t n = 0; n <= bound; ++n) {
    FinSet s = fin(n);
    FinBij id = identity(s);
    std::vector<FinBij> ps = enumerate_bijections(s, s, bound);
    for (const FinBij& p : ps) {
      t.expect(transport_loop(id, p) == p, "fixed-point-refl", [&] { return show_all({&p}); });
      t.expect(transport_loop(p, p) == p, "fixed-point-self", [&] { return show_all({&p}); });
      for (const FinBij& q : ps) {
        FinBij tr = transport_loop(q, p);
        t.expect(tr == compose(compose(inverse(q), p), q), "conjugation",
                 [&] { return show_all({&p, &q}); });
        // The K step: tr q p = p exactly when p and q commute.
        t.expect((tr == p) == (compose(p, q) == compose(q, p)), "fixed-iff-commute",
                 [&] { return show_all({&p, &q}); });
      }
    }
  }
  if (bound >= 2) {
    r.facts.push_back({"tr(swap, swap)", transport_loop(swap(), swap()).show()});
    r.facts.push_back({"tr(refl, swap)", transport_loop(identity(two()), swap()).show()});
  }
  return r;
}

OracleReport check_K_witnesses(const std::optional<FinBij>& loop) {
  OracleReport r;
  r.suite = "K-witnesses";
  r.models = {"K", "alpha", "beta", "s3-alpha-beta", "univ1-not-groupoid"};
  r.bound = 2;
  Tally t(r);
  FinBij p = loop.value_or(swap());
  if (p.domain.size != 2 || p.codomain.size != 2) throw OracleError("K witnesses live over 2");
  FinBij a1 = identity(two());  // α: first component refl
  FinBij b1 = p;                // β: first component p
  for (const auto& [name, q] : {std::pair<std::string, FinBij>{"alpha", a1}, {"beta", b1}}) {
    t.expect(compose(p, q) == compose(q, p), "commutes",
             [&, name = name] { return name + " at p=" + p.show(); });
    t.expect(transport_loop(q, p) == p, "transport-fixed",
             [&, name = name] { return name + " at p=" + p.show(); });
  }
  t.expect(!(a1 == b1), "distinct", [&] { return "alpha.1 = beta.1 = " + a1.show(); });
  std::size_t k = 0;
  for (const FinBij& q : enumerate_bijections(two(), two(), 2)) {
    if (compose(p, q) == compose(q, p)) ++k;
  }
  r.facts.push_back({"p", p.show()});
  r.facts.push_back({"alpha.1", a1.show()});
  r.facts.push_back({"beta.1", b1.show()});
  r.facts.push_back({"distinct", a1 == b1 ? "false" : "true"});
  r.facts.push_back({"|K(2,p)|", std::to_string(k)});
  return r;
}

OracleReport check_sigma_loop_cardinality(std::size_t bound) {
  check_bound(bound);
  OracleReport r;
  r.suite = "sigma-loop-cardinality";
  r.models = {"om-si-comm@0", "om-si-comm-eq@0"};
  r.bound = bound;
  Tally t(r);
  for (const Instance& in : sigma_instances(bound)) {
    const Groupoid& a = in.base;
    const Family& fam = in.family;
    Sigma s = sigma(a, fam);
    // Σ must itself be a groupoid before its loops mean anything.
    for (std::size_t m = 0; m < s.mors.size(); ++m) {
      for (std::size_t n = 0; n < s.mors.size(); ++n) {
        if (s.mors[m].tgt != s.mors[n].src) continue;
        auto mn = sigma_then(s, a, fam, m, n);
        t.expect(mn && s.mors[*mn].tgt == s.mors[n].tgt, "sigma-composition",
                 [&] { return in.name + " mor " + std::to_string(m) + "," + std::to_string(n); });
        if (!mn) continue;
        for (std::size_t k = 0; k < s.mors.size(); ++k) {
          if (s.mors[n].tgt != s.mors[k].src) continue;
          auto l = sigma_then(s, a, fam, *mn, k);
          auto nk = sigma_then(s, a, fam, n, k);
          auto rr = nk ? sigma_then(s, a, fam, m, *nk) : std::nullopt;
          t.expect(l && rr && *l == *rr, "sigma-associativity", [&] { return in.name; });
        }
      }
    }
    std::size_t x0 = in.base_point, u0 = fam.fibre_point;
    std::size_t o0 = 0;
    while (s.objects[o0] != std::pair{x0, u0}) ++o0;
    // Left: Ω(Σ•(A, P)).
    std::vector<std::size_t> lhs;
    for (std::size_t m = 0; m < s.mors.size(); ++m) {
      if (s.mors[m].src == o0 && s.mors[m].tgt == o0) lhs.push_back(m);
    }
    // Right: Σ•(Ω A, Ω̃ P), a loop p with a path P(p)(u0) = u0 in the fibre.
    std::set<std::pair<std::size_t, std::size_t>> rhs;
    const Groupoid& fibre = fam.fibre[x0];
    for (std::size_t p : a.hom(x0, x0)) {
      for (std::size_t phi : fibre.hom(fam.action[p].obj[u0], u0)) rhs.insert({p, phi});
    }
    // The comparison map sends (f, φ) to (f, φ); check it is a pointed bijection.
    std::set<std::pair<std::size_t, std::size_t>> image;
    for (std::size_t m : lhs) image.insert({s.mors[m].f, s.mors[m].phi});
    t.expect(lhs.size() == rhs.size(), "cardinality", [&] {
      return in.name + ": " + std::to_string(lhs.size()) + " vs " + std::to_string(rhs.size());
    });
    t.expect(image.size() == lhs.size() && image == rhs, "bijection", [&] { return in.name; });
    t.expect(image.count({a.ids[x0], fibre.ids[u0]}) == 1, "pointed", [&] { return in.name; });
    r.facts.push_back({in.name, std::to_string(lhs.size()) + " = " + std::to_string(rhs.size())});
  }
  return r;
}

std::vector<std::string> suite_names() {
  return {"bijection-enumeration", "groupoid-laws", "transport-conjugation", "K-witnesses",
          "sigma-loop-cardinality"};
}

std::vector<OracleReport> run_suites(const std::optional<std::string>& suite, std::size_t bound) {
  check_bound(bound);
  std::vector<std::string> names = suite_names();
  if (suite && std::find(names.begin(), names.end(), *suite) == names.end()) {
    throw OracleError("unknown suite '" + *suite + "'");
  }
  std::vector<OracleReport> out;
  for (const std::string& n : names) {
    if (suite && n != *suite) continue;
    if (n == "bijection-enumeration") out.push_back(check_enumeration(bound));
    if (n == "groupoid-laws") out.push_back(check_groupoid_laws(bound));
    if (n == "transport-conjugation") out.push_back(check_transport_conjugation(bound));
    if (n == "K-witnesses") out.push_back(check_K_witnesses());
    if (n == "sigma-loop-cardinality") out.push_back(check_sigma_loop_cardinality(bound));
  }
  return out;
}

}  // namespace hlevel::oracle
