// Copyright 2026 The shapdb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared fixtures: the running example in its various representations.

#ifndef SHAPDB_TESTS_FIXTURES_H_
#define SHAPDB_TESTS_FIXTURES_H_

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "shapdb/circuit.h"
#include "shapdb/lineage.h"
#include "shapdb/numeric.h"

namespace shapdb::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(SHAPDB_DATA_DIR) + "/" + name;
}

inline Rational Q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// lin(q, D) with a1..a8 = ids 1..8 (endogenous), b1..b8 = ids 9..16.
inline DnfLineage RunningExample() {
  return ReadDnfFile(DataPath("running_example.dnf"));
}

inline DnfLineage Q2Lineage() { return ReadDnfFile(DataPath("q2_lineage.dnf")); }
inline DnfLineage Q1Lineage() { return ReadDnfFile(DataPath("q1_lineage.dnf")); }

// Database of n endogenous facts with ids 1..n.
inline DatabasePtr Endogenous(std::size_t n) {
  std::vector<Fact> facts;
  for (std::size_t i = 1; i <= n; ++i) {
    facts.push_back(Fact{static_cast<FactId>(i), "x" + std::to_string(i),
                         FactKind::kEndogenous});
  }
  return std::make_shared<Database>(std::move(facts));
}

// A deterministic and decomposable circuit for elin(q) over a1..a8:
//   a1 v (-a1 & (A v (-A & a6 & a7))),
//   A = (a2 v (-a2 & a3)) & (a4 v (-a4 & a5)).
// Not gates sit above And gates, so it is d-D but not in NNF.
inline BooleanCircuit Fig2Circuit() {
  BooleanCircuit c(Endogenous(8));
  GateId a[9];
  for (FactId i = 1; i <= 7; ++i) a[i] = c.AddVar(i);
  auto ex_or = [&](GateId x, GateId y) {  // x v (-x & y), deterministic
    return c.AddOr({x, c.AddAnd({c.AddNot(x), y})});
  };
  const GateId left = ex_or(a[2], a[3]);                    // a2 v a3
  const GateId right = ex_or(a[4], a[5]);                   // a4 v a5
  const GateId both = c.AddAnd({left, right});              // A
  const GateId not_both = c.AddNot(both);                   // -A
  const GateId pair = c.AddAnd({a[6], a[7]});
  const GateId g2 = c.AddOr({both, c.AddAnd({not_both, pair})});
  const GateId out = c.AddOr({a[1], c.AddAnd({c.AddNot(a[1]), g2})});
  c.SetOutput(out);
  c.set_determinism(Determinism::kTrusted);
  return c;
}

inline Assignment Set(std::initializer_list<FactId> ids) { return Assignment(ids); }

}  // namespace shapdb::testing

// gtest otherwise prints GMP values through a pointer conversion.
inline void PrintTo(const mpz_class& v, std::ostream* os) { *os << v.get_str(); }
inline void PrintTo(const mpq_class& v, std::ostream* os) { *os << v.get_str(); }

#endif  // SHAPDB_TESTS_FIXTURES_H_
