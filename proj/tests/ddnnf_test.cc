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

#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "shapdb/ddnnf.h"
#include "shapdb/errors.h"
#include "shapdb/generator.h"

namespace shapdb {
namespace {

using testing::Endogenous;

std::vector<char> Values(std::uint32_t mask, int n) {
  std::vector<char> v(n + 1, 0);
  for (int i = 1; i <= n; ++i) v[i] = (mask >> (i - 1)) & 1U;
  return v;
}

Assignment ToAssignment(const std::vector<char>& v) {
  Assignment a;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i]) a.Insert(static_cast<FactId>(i));
  }
  return a;
}

std::vector<int> Range(int n) {
  std::vector<int> out;
  for (int i = 1; i <= n; ++i) out.push_back(i);
  return out;
}

// Small C' instances: DNF lineages and random circuits, exogenous fixed.
std::vector<BooleanCircuit> Instances(std::size_t count, std::uint64_t seed) {
  std::vector<BooleanCircuit> out;
  CorpusSpec spec;
  spec.count = count;
  spec.min_facts = 3;
  spec.max_facts = 8;
  spec.max_monomials = 6;
  spec.max_exogenous = 2;
  spec.seed = seed;
  for (const DnfLineage& l : GenerateCorpus(spec)) {
    out.push_back(CircuitFromDnf(l.FixExogenous()));
  }
  for (std::uint64_t s = 0; s < count; ++s) {
    CircuitSpec cs;
    cs.n_facts = 3 + s % 5;
    cs.n_gates = 3 + s % 7;
    cs.n_exogenous = s % 2;
    cs.seed = seed * 1000 + s;
    out.push_back(FixExogenousCircuit(GenerateCircuit(cs)));
  }
  return out;
}

TEST(CompileTest, EmptyFormulaIsTrue) {
  CnfFormula cnf;
  cnf.vars.Resize(2);
  const Ddnnf d = Compile(cnf);
  EXPECT_TRUE(d.IsTrue(d.root()));
  EXPECT_EQ(CountModels(d, {1, 2}), BigInt(4));
}

TEST(CompileTest, UnitClause) {
  CnfFormula cnf;
  cnf.vars.Resize(1);
  cnf.clauses = {{1}};
  const Ddnnf d = Compile(cnf);
  EXPECT_EQ(CountModels(d, {1}), BigInt(1));
  EXPECT_TRUE(d.Evaluate({0, 1}));
  EXPECT_FALSE(d.Evaluate({0, 0}));
}

TEST(CompileTest, Unsatisfiable) {
  CnfFormula cnf;
  cnf.vars.Resize(2);
  cnf.clauses = {{1, 2}, {-1}, {-2}};
  const Ddnnf d = Compile(cnf);
  EXPECT_TRUE(d.IsFalse(d.root()));
  EXPECT_EQ(CountModels(d, {1, 2}), BigInt(0));
}

TEST(CompileTest, EquivalentDecomposableDeterministic) {
  for (const BooleanCircuit& c : Instances(25, 1)) {
    const CnfFormula cnf = Tseytin(c);
    const int n = cnf.num_vars();
    ASSERT_LE(n, 20);
    const Ddnnf d = Compile(cnf);
    BigInt models = 0;
    for (std::uint32_t m = 0; m < (1U << n); ++m) {
      const std::vector<char> v = Values(m, n);
      ASSERT_EQ(d.Evaluate(v), cnf.Evaluate(v));
      if (cnf.Evaluate(v)) ++models;
    }
    EXPECT_EQ(CountModels(d, Range(n)), models);
    const BooleanCircuit as_circuit = ToCircuit(d, Endogenous(n));
    EXPECT_TRUE(CheckDecomposable(as_circuit));
    EXPECT_EQ(CheckDeterministic(as_circuit, DeterminismMode::kExhaustive),
              DeterminismVerdict::kDeterministic);
  }
}

TEST(CompileTest, StatsAndCacheReuse) {
  // Two independent copies of the same sub-formula shape.
  CnfFormula cnf;
  cnf.vars.Resize(6);
  cnf.clauses = {{1, 2}, {-1, 3}, {4, 5}, {-4, 6}};
  CompileStats stats;
  const Ddnnf d = Compile(cnf, {}, &stats);
  EXPECT_GE(stats.components, 2u);
  EXPECT_GE(stats.decisions, 2u);
  EXPECT_EQ(CountModels(d, Range(6)), BigInt(16));
}

TEST(CompileTest, BudgetExhausted) {
  const CnfFormula cnf =
      Tseytin(CircuitFromDnf(testing::RunningExample().FixExogenous()));
  CompileOptions options;
  options.node_budget = 1;
  EXPECT_THROW(Compile(cnf, options), BudgetExhaustedError);
}

TEST(CompileTest, Timeout) {
  const CnfFormula cnf =
      Tseytin(CircuitFromDnf(testing::RunningExample().FixExogenous()));
  const Deadline deadline = Deadline::After(0);
  CompileOptions options;
  options.deadline = &deadline;
  EXPECT_THROW(Compile(cnf, options), TimeoutError);
}

TEST(CompileTest, LiteralOutOfRange) {
  CnfFormula cnf;
  cnf.vars.Resize(1);
  cnf.clauses = {{1, 2}};
  EXPECT_THROW(Compile(cnf), Error);
}

TEST(PurgeTest, EquivalentToSourceCircuit) {
  for (const BooleanCircuit& c : Instances(25, 2)) {
    const CnfFormula cnf = Tseytin(c);
    const Ddnnf compiled = Compile(cnf);
    const Ddnnf purged = PurgeTseytin(compiled);
    EXPECT_LE(purged.size(), compiled.size());
    const int n = cnf.num_vars();
    const std::vector<int> endo = cnf.vars.EndogenousVars();
    for (std::uint32_t m = 0; m < (1U << endo.size()); ++m) {
      std::vector<char> v(n + 1, 0);
      for (std::size_t i = 0; i < endo.size(); ++i) v[endo[i]] = (m >> i) & 1U;
      ASSERT_EQ(purged.Evaluate(v), Evaluate(c, ToAssignment(v)));
    }
    // Every model of C' extends uniquely, so purging keeps the model count
    // over the endogenous variables.
    EXPECT_EQ(CountModels(purged, endo), CountModels(compiled, Range(n)));
    const BooleanCircuit as_circuit = ToCircuit(purged, c.database_ptr());
    EXPECT_TRUE(CheckDecomposable(as_circuit));
    EXPECT_EQ(CheckDeterministic(as_circuit, DeterminismMode::kExhaustive),
              DeterminismVerdict::kDeterministic);
  }
}

TEST(PurgeTest, NoAuxiliariesLeavesFunction) {
  CnfFormula cnf;
  cnf.vars.Resize(3);
  for (int v = 1; v <= 3; ++v) cnf.vars.SetEndogenous(v, "");
  cnf.clauses = {{1, 2}, {-2, 3}};
  const Ddnnf compiled = Compile(cnf);
  const Ddnnf purged = PurgeTseytin(compiled, {});
  for (std::uint32_t m = 0; m < 8; ++m) {
    EXPECT_EQ(purged.Evaluate(Values(m, 3)), compiled.Evaluate(Values(m, 3)));
  }
  EXPECT_LE(purged.size(), compiled.size());
}

TEST(PurgeTest, UnsatisfiableRoot) {
  CnfFormula cnf;
  cnf.vars.Resize(2);
  cnf.vars.SetEndogenous(1, "");
  cnf.clauses = {{2}, {-2}};
  const Ddnnf purged = PurgeTseytin(Compile(cnf));
  EXPECT_EQ(purged.size(), 1u);
  EXPECT_TRUE(purged.IsFalse(purged.root()));
}

TEST(NnfTest, ParseExample) {
  std::istringstream in("nnf 3 2 2\nL 1\nL 2\nA 2 0 1\n");
  const Ddnnf d = ParseNnf(in);
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d.EdgeCount(), 2u);
  EXPECT_EQ(d.root(), 2u);
  EXPECT_TRUE(d.Evaluate({0, 1, 1}));
  EXPECT_FALSE(d.Evaluate({0, 1, 0}));
  EXPECT_EQ(CountModels(d, {1, 2}), BigInt(1));
}

TEST(NnfTest, DecisionNode) {
  std::istringstream in(
      "c x1 ? x2 : true\nnnf 5 4 2\nL 1\nL 2\nL -1\nA 2 0 1\nO 1 2 3 2\n");
  const Ddnnf d = ParseNnf(in);
  EXPECT_EQ(d.node(4).decision, 1);
  EXPECT_EQ(CountModels(d, {1, 2}), BigInt(3));
  std::istringstream in2("nnf 4 2 2\nL 1\nL -1\nL 2\nO 1 2 0 1\n");
  const Ddnnf d2 = ParseNnf(in2);
  EXPECT_EQ(CountModels(d2, {1, 2}), BigInt(4));
}

TEST(NnfTest, RoundTrip) {
  const CnfFormula cnf =
      Tseytin(CircuitFromDnf(testing::Q2Lineage().FixExogenous()));
  const Ddnnf compiled = Compile(cnf);
  const std::string text = WriteNnf(compiled);
  std::istringstream in(text);
  const Ddnnf back = ParseNnf(in);
  EXPECT_EQ(WriteNnf(back), text);
  EXPECT_EQ(CountModels(back, Range(cnf.num_vars())),
            CountModels(compiled, Range(cnf.num_vars())));
}

TEST(NnfTest, Errors) {
  struct Case {
    const char* text;
    std::size_t line;
  };
  const Case cases[] = {
      {"L 1\n", 1},
      {"nnf 2 1 2\nL 1\nA 1 1\n", 3},        // child not earlier
      {"nnf 1 0 1\nL 3\n", 2},               // literal out of range
      {"nnf 2 1 1\nL 1\nO 2 1 0\n", 3},      // decision out of range
      {"nnf 1 0 1\nL 1 2\n", 2},             // trailing tokens
      {"nnf 1 0 1\nL 1\nL 1\n", 3},          // extra node
      {"nnf 2 5 1\nL 1\nA 1 0\n", 3},        // edge count
      {"nnf 1 0 x\n", 1},
      {"nnf 1 0 1\nQ 1\n", 2},
  };
  for (const Case& c : cases) {
    std::istringstream in(c.text);
    try {
      ParseNnf(in, "x.nnf");
      ADD_FAILURE() << "no error for: " << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), c.line) << c.text << " -> " << e.what();
    }
  }
  std::istringstream empty("");
  EXPECT_THROW(ParseNnf(empty), ParseError);
}

TEST(ToCircuitTest, MissingVariable) {
  Ddnnf d;
  d.vars().Resize(3);
  d.SetRoot(d.AddLiteral(3));
  EXPECT_THROW(ToCircuit(d, Endogenous(2)), PreconditionError);
}

TEST(ToCircuitTest, Constants) {
  Ddnnf d;
  d.vars().Resize(1);
  d.SetRoot(d.AddOr({d.AddTrue(), d.AddLiteral(-1)}));
  const BooleanCircuit c = ToCircuit(d, Endogenous(1));
  EXPECT_TRUE(Evaluate(c, Assignment{}));
  EXPECT_TRUE(Evaluate(c, Assignment{1}));
}

TEST(CountModelsTest, DomainSmoothing) {
  Ddnnf d;
  d.vars().Resize(3);
  d.SetRoot(d.AddOr({d.AddLiteral(1), d.AddLiteral(-1)}));
  EXPECT_EQ(CountModels(d, {1, 2, 3}), BigInt(8));
  EXPECT_THROW(CountModels(d, {2}), InputError);
}

}  // namespace
}  // namespace shapdb
