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
#include "shapdb/cnf.h"
#include "shapdb/errors.h"
#include "shapdb/generator.h"

namespace shapdb {
namespace {

using testing::Endogenous;

TEST(TseytinTest, AndGate) {
  BooleanCircuit c(Endogenous(2));
  c.SetOutput(c.AddAnd({c.AddVar(1), c.AddVar(2)}));
  const CnfFormula cnf = Tseytin(c);
  const std::vector<Clause> expected = {{3}, {-3, 1}, {-3, 2}, {3, -1, -2}};
  EXPECT_EQ(cnf.clauses, expected);
  EXPECT_TRUE(cnf.vars.IsEndogenous(1));
  EXPECT_TRUE(cnf.vars.IsAuxiliary(3));
  EXPECT_TRUE(CheckEquisatisfiable(c, cnf));
}

TEST(TseytinTest, OrNotAndConstants) {
  BooleanCircuit c(Endogenous(2));
  const GateId x = c.AddVar(1);
  const GateId nx = c.AddNot(x);
  c.SetOutput(c.AddOr({nx, c.AddVar(2), c.AddFalse()}));
  const CnfFormula cnf = Tseytin(c);
  // z3 = Or(z4, x2, z5), z4 = Not(x1), z5 = False.
  const std::vector<Clause> expected = {{3},     {3, -4},   {3, -2},
                                        {3, -5}, {-3, 4, 2, 5},
                                        {4, 1},  {-4, -1},  {-5}};
  EXPECT_EQ(cnf.clauses, expected);
  EXPECT_TRUE(CheckEquisatisfiable(c, cnf));
}

// The 22-clause encoding of q2 printed with the proxy example: z1 is the Or,
// z2..z6 the monomial Ands, numbered after the endogenous facts.
TEST(TseytinTest, Q2LineageMatchesPrintedEncoding) {
  const CnfFormula cnf =
      Tseytin(CircuitFromDnf(testing::Q2Lineage().FixExogenous()));
  const int z1 = 9, z2 = 10, z3 = 11, z4 = 12, z5 = 13, z6 = 14;
  const std::vector<Clause> expected = {
      {z1},          {z1, -z2},       {z1, -z3},        {z1, -z4},
      {z1, -z5},     {z1, -z6},       {-z1, z2, z3, z4, z5, z6},
      {-z2, 2},      {-z2, 4},        {z2, -2, -4},     {-z3, 2},
      {-z3, 5},      {z3, -2, -5},    {-z4, 3},         {-z4, 4},
      {z4, -3, -4},  {-z5, 3},        {-z5, 5},         {z5, -3, -5},
      {-z6, 6},      {-z6, 7},        {z6, -6, -7}};
  EXPECT_EQ(cnf.clauses, expected);
  EXPECT_EQ(cnf.num_vars(), 14);
  EXPECT_EQ(cnf.vars.EndogenousVars(),
            (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(cnf.vars.AuxiliaryVars(),
            (std::vector<int>{9, 10, 11, 12, 13, 14}));
  EXPECT_EQ(FindRepeatedVariableClause(cnf), -1);
}

TEST(TseytinTest, PropertiesOnRandomCircuits) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    CircuitSpec spec;
    spec.n_facts = 2 + seed % 7;
    spec.n_gates = 3 + seed % 9;
    spec.n_exogenous = seed % 3;
    spec.seed = seed;
    const BooleanCircuit c = FixExogenousCircuit(GenerateCircuit(spec));
    const CnfFormula cnf = Tseytin(c);
    // Linear size: at most 1 + (inputs + 1) clauses per gate.
    std::size_t bound = 1;
    for (const Gate& g : c.gates()) bound += g.inputs.size() + 2;
    EXPECT_LE(cnf.clauses.size(), bound);
    EXPECT_TRUE(CheckEquisatisfiable(c, cnf)) << "seed " << seed;
    EXPECT_EQ(FindRepeatedVariableClause(cnf), -1) << "seed " << seed;
  }
}

TEST(TseytinTest, EquisatisfiableDetectsBrokenEncoding) {
  BooleanCircuit c(Endogenous(2));
  c.SetOutput(c.AddAnd({c.AddVar(1), c.AddVar(2)}));
  CnfFormula cnf = Tseytin(c);
  cnf.clauses.pop_back();  // z no longer forced by x1 & x2
  cnf.clauses.erase(cnf.clauses.begin());
  EXPECT_FALSE(CheckEquisatisfiable(c, cnf));
}

TEST(CnfTest, RepeatedVariableClause) {
  CnfFormula cnf;
  cnf.vars.Resize(3);
  cnf.clauses = {{1, 2}, {3, -3}, {1, 1}};
  EXPECT_EQ(FindRepeatedVariableClause(cnf), 1);
}

TEST(CnfTest, Evaluate) {
  CnfFormula cnf;
  cnf.vars.Resize(2);
  cnf.clauses = {{1, -2}, {2}};
  EXPECT_TRUE(cnf.Evaluate({0, 1, 1}));
  EXPECT_FALSE(cnf.Evaluate({0, 0, 1}));
  EXPECT_EQ(cnf.OccurringVars(), (std::vector<int>{1, 2}));
}

TEST(DimacsTest, RoundTrip) {
  const CnfFormula cnf =
      Tseytin(CircuitFromDnf(testing::RunningExample().FixExogenous()));
  const std::string text = WriteDimacs(cnf);
  std::istringstream in(text);
  const CnfFormula back = ParseDimacs(in);
  EXPECT_EQ(back.clauses, cnf.clauses);
  EXPECT_EQ(back.vars.EndogenousVars(), cnf.vars.EndogenousVars());
  EXPECT_EQ(back.vars.labels(), cnf.vars.labels());
  EXPECT_EQ(WriteDimacs(back), text);
}

TEST(DimacsTest, ClausesSpanningLines) {
  std::istringstream in("c plain comment\np cnf 3 2\n1 -2\n 3 0 -1 0\n");
  const CnfFormula cnf = ParseDimacs(in);
  EXPECT_EQ(cnf.clauses, (std::vector<Clause>{{1, -2, 3}, {-1}}));
  EXPECT_TRUE(cnf.vars.AuxiliaryVars().size() == 3);
}

TEST(DimacsTest, Errors) {
  struct Case {
    const char* text;
    std::size_t line;
  };
  const Case cases[] = {
      {"1 2 0\n", 1},
      {"p cnf 2 1\n1 3 0\n", 2},
      {"p cnf 2 2\n1 0\n", 2},
      {"p cnf 2 1\n1 2\n", 2},
      {"p cnf 2 1\n1 x 0\n", 2},
      {"p dnf 2 1\n", 1},
      {"c endo zero\np cnf 1 0\n", 1},
  };
  for (const Case& c : cases) {
    std::istringstream in(c.text);
    try {
      ParseDimacs(in, "x.cnf");
      ADD_FAILURE() << "no error for: " << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), c.line) << c.text << " -> " << e.what();
    }
  }
}

TEST(VarMapTest, DatabaseFromEndogenousVars) {
  VarMap vars(4);
  vars.SetEndogenous(2, "R(x)");
  vars.SetEndogenous(4, "");
  vars.SetAuxiliary(3);
  const DatabasePtr db = vars.ToDatabase();
  EXPECT_EQ(db->Endogenous(), (std::vector<FactId>{2, 4}));
  EXPECT_EQ(db->Get(2).label, "R(x)");
  EXPECT_EQ(db->Get(4).label, "x4");
}

}  // namespace
}  // namespace shapdb
