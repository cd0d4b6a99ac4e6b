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

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "shapdb/brute_force.h"
#include "shapdb/errors.h"
#include "shapdb/generator.h"
#include "shapdb/inexact.h"
#include "shapdb/metrics.h"
#include "shapdb/pipeline.h"

namespace shapdb {
namespace {

using testing::Q;

// h(S) = (1/n) sum_i psi_i(S) with every CNF variable as a player.
RationalGame ProxyGame(const CnfFormula& cnf) {
  return [&cnf](const Assignment& s) {
    long sat = 0;
    for (const Clause& c : cnf.clauses) {
      for (Literal l : c) {
        if (s.Contains(static_cast<FactId>(VarOf(l))) == (l > 0)) {
          ++sat;
          break;
        }
      }
    }
    return Q(sat, static_cast<long>(cnf.clauses.size()));
  };
}

void ExpectProxyMatchesGame(const CnfFormula& cnf) {
  std::vector<FactId> players;
  for (int v = 1; v <= cnf.num_vars(); ++v) players.push_back(v);
  const ProxyScore score = CnfProxy(cnf);
  const RationalGame game = ProxyGame(cnf);
  ASSERT_EQ(score.values.size(), cnf.vars.EndogenousVars().size());
  for (const auto& [var, value] : score.values) {
    EXPECT_EQ(value, BruteForceShapleyGame(players, game, var)) << "var " << var;
  }
}

CnfFormula RandomCnf(std::mt19937_64& rng) {
  CnfFormula cnf;
  const int n = 2 + static_cast<int>(rng() % 10);
  cnf.vars.Resize(n);
  for (int v = 1; v <= n; ++v) {
    if (rng() % 3 != 0) cnf.vars.SetEndogenous(v, "");
  }
  const int clauses = 1 + static_cast<int>(rng() % 8);
  for (int i = 0; i < clauses; ++i) {
    std::vector<int> vars;
    for (int v = 1; v <= n; ++v) vars.push_back(v);
    std::shuffle(vars.begin(), vars.end(), rng);
    vars.resize(1 + rng() % std::min(n, 4));
    Clause c;
    for (int v : vars) c.push_back(rng() % 2 ? v : -v);
    cnf.clauses.push_back(c);
  }
  return cnf;
}

Rational ProxyOf(const CnfFormula& cnf, int var) {
  for (const auto& [v, value] : CnfProxy(cnf).values) {
    if (v == var) return value;
  }
  ADD_FAILURE() << "no score for " << var;
  return 0;
}

TEST(ProxyTest, Q2Lineage) {
  const CnfFormula cnf = PrepareCnf(CircuitFromDnf(testing::Q2Lineage().FixExogenous()));
  ASSERT_EQ(cnf.clauses.size(), 22u);
  // Brute force over the clause-sum game gives 1/33 for a2..a5 (each occurs
  // in two "-z v a" clauses); see also ExpectProxyMatchesGame below.
  for (int v = 2; v <= 5; ++v) EXPECT_EQ(ProxyOf(cnf, v), Q(1, 33));
  EXPECT_EQ(ProxyOf(cnf, 6), Q(1, 66));
  EXPECT_EQ(ProxyOf(cnf, 7), Q(1, 66));
  EXPECT_EQ(ProxyOf(cnf, 1), Q(0));
  EXPECT_EQ(ProxyOf(cnf, 8), Q(0));
  ExpectProxyMatchesGame(cnf);
}

TEST(ProxyTest, Q1Lineage) {
  const CnfFormula cnf = PrepareCnf(CircuitFromDnf(testing::Q1Lineage().FixExogenous()));
  EXPECT_EQ(cnf.clauses, (std::vector<Clause>{{1}}));
  EXPECT_EQ(ProxyOf(cnf, 1), Q(1));
}

TEST(ProxyTest, RunningExampleGivesA1Zero) {
  const CnfFormula cnf = PrepareCnf(CircuitFromDnf(testing::RunningExample().FixExogenous()));
  EXPECT_EQ(ProxyOf(cnf, 1), Q(0));
  for (int v = 2; v <= 5; ++v) EXPECT_EQ(ProxyOf(cnf, v), Q(2, 75));
  const ShapleyReport r = CnfProxyReport(cnf);
  EXPECT_FALSE(r.comparable);
  EXPECT_EQ(r.method, Method::kProxy);
  EXPECT_EQ(r.scores.size(), 8u);
  EXPECT_GT(r.Find(1)->rank, 1u);  // exact Shapley ranks a1 first
}

TEST(ProxyTest, SmallCnf) {
  CnfFormula cnf;
  cnf.vars.Resize(4);
  for (int v = 1; v <= 4; ++v) cnf.vars.SetEndogenous(v, "");
  cnf.clauses = {{1, 2}, {1, 3, 4}};
  const ProxyScore s = CnfProxy(cnf, true);
  EXPECT_EQ(s.num_clauses, 2u);
  const std::vector<std::pair<int, Rational>> expected = {
      {1, Q(5, 12)}, {2, Q(1, 4)}, {3, Q(1, 6)}, {4, Q(1, 6)}};
  EXPECT_EQ(s.values, expected);
  EXPECT_EQ(s.trace.size(), 5u);
  // The exact Shapley values of the CNF itself differ.
  const BooleanFunction fn{{1, 2, 3, 4}, [&cnf](const Assignment& a) {
                             std::vector<char> v(5, 0);
                             for (int i = 1; i <= 4; ++i) v[i] = a.Contains(i);
                             return cnf.Evaluate(v);
                           }};
  EXPECT_EQ(BruteForceShapley(fn, 1), Q(7, 12));
  EXPECT_EQ(BruteForceShapley(fn, 2), Q(1, 4));
  EXPECT_EQ(BruteForceShapley(fn, 3), Q(1, 12));
}

TEST(ProxyTest, NegativeLiterals) {
  CnfFormula cnf;
  cnf.vars.Resize(3);
  for (int v = 1; v <= 3; ++v) cnf.vars.SetEndogenous(v, "");
  cnf.clauses = {{1, -2, -3}};
  // m = 3: +1/(3 C(2,2)) for x1, -1/(3 C(2,1)) for x2, x3.
  EXPECT_EQ(ProxyOf(cnf, 1), Q(1, 3));
  EXPECT_EQ(ProxyOf(cnf, 2), Q(-1, 6));
  ExpectProxyMatchesGame(cnf);
}

TEST(ProxyTest, WideClauseBeyondMachineIntegers) {
  // C(69, 35) exceeds 64 bits, so the shares need big integers.
  const int m = 70;
  CnfFormula cnf;
  cnf.vars.Resize(m);
  for (int v = 1; v <= m; ++v) cnf.vars.SetEndogenous(v, "");
  Clause wide;
  for (int v = 1; v <= m; ++v) wide.push_back(v <= 35 ? v : -v);
  cnf.clauses = {wide, {1, 2}};
  BigInt c;
  mpz_bin_uiui(c.get_mpz_t(), m - 1, 35);
  const Rational wide_term(1, 2 * m * c);
  EXPECT_EQ(ProxyOf(cnf, 1), wide_term + Q(1, 4));
  EXPECT_EQ(ProxyOf(cnf, 3), wide_term);
  EXPECT_EQ(ProxyOf(cnf, 70), -wide_term);
}

TEST(ProxyTest, MatchesClauseSumGame) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) ExpectProxyMatchesGame(RandomCnf(rng));
  CorpusSpec spec;
  spec.count = 40;
  spec.min_facts = 2;
  spec.max_facts = 5;
  spec.max_monomials = 3;
  spec.seed = 4;
  for (const DnfLineage& l : GenerateCorpus(spec)) {
    const CnfFormula cnf = PrepareCnf(CircuitFromDnf(l));
    if (cnf.num_vars() <= 12) ExpectProxyMatchesGame(cnf);
  }
}

TEST(ProxyTest, ReorderInvariance) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const CnfFormula cnf = RandomCnf(rng);
    CnfFormula shuffled = cnf;
    std::shuffle(shuffled.clauses.begin(), shuffled.clauses.end(), rng);
    for (Clause& c : shuffled.clauses) std::shuffle(c.begin(), c.end(), rng);
    EXPECT_EQ(CnfProxy(shuffled).values, CnfProxy(cnf).values);
  }
}

TEST(ProxyTest, RejectsRepeatedVariable) {
  CnfFormula cnf;
  cnf.vars.Resize(2);
  cnf.vars.SetEndogenous(1, "");
  cnf.clauses = {{1}, {2, -1, -2}};
  try {
    CnfProxy(cnf);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("clause 1"), std::string::npos)
        << e.what();
  }
}

Database Db(const BooleanFunction& fn) {
  std::vector<Fact> facts;
  for (FactId f : fn.variables) {
    facts.push_back({f, "x" + std::to_string(f), FactKind::kEndogenous});
  }
  return Database(facts);
}

BooleanFunction Single(FactId x, std::vector<FactId> vars) {
  return {std::move(vars), [x](const Assignment& a) { return a.Contains(x); }};
}

ShapleyReport ExactReport() {
  return ExactPipeline(CircuitFromDnf(testing::RunningExample()));
}

TEST(MonteCarloTest, SingleFact) {
  const BooleanFunction fn = Single(2, {1, 2, 3});
  for (std::uint64_t seed : {0, 1, 99}) {
    for (std::size_t r : {1, 7}) {
      const ShapleyReport rep = MonteCarlo(fn, Db(fn), {seed, r});
      EXPECT_EQ(*rep.Find(2)->exact, Q(1));
      EXPECT_EQ(*rep.Find(1)->exact, Q(0));
      EXPECT_EQ(rep.method, Method::kMonteCarlo);
    }
  }
}

TEST(MonteCarloTest, Constant) {
  const BooleanFunction fn{{1, 2, 3}, [](const Assignment&) { return true; }};
  const ShapleyReport rep = MonteCarlo(fn, Db(fn), {5, 10});
  for (const FactScore& s : rep.scores) EXPECT_EQ(s.value, 0.0);
}

TEST(MonteCarloTest, RunningExampleAccuracy) {
  const DnfLineage l = testing::RunningExample();
  const ShapleyReport exact = ExactReport();
  const ShapleyReport mc = MonteCarlo(l.FixExogenous().AsFunction(),
                                      l.database(), {42, 50});
  ASSERT_EQ(mc.scores.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(mc.scores[i].value, exact.scores[i].value, 0.1);
  }
  EXPECT_GE(Ndcg(exact, mc), 0.95);
}

TEST(MonteCarloTest, Deterministic) {
  const DnfLineage l = testing::RunningExample();
  const BooleanFunction fn = l.FixExogenous().AsFunction();
  const ShapleyReport a = MonteCarlo(fn, l.database(), {3, 5});
  const ShapleyReport b = MonteCarlo(fn, l.database(), {3, 5});
  EXPECT_EQ(a.Values(), b.Values());
}

TEST(MonteCarloTest, Unbiased) {
  const DnfLineage l = testing::RunningExample();
  const BooleanFunction fn = l.FixExogenous().AsFunction();
  const ShapleyReport exact = ExactReport();
  const int seeds = 1000;
  std::vector<double> sum(8, 0), sq(8, 0);
  for (int s = 0; s < seeds; ++s) {
    const ShapleyReport mc = MonteCarlo(fn, l.database(), {1000u + s, 1});
    for (std::size_t i = 0; i < 8; ++i) {
      sum[i] += mc.scores[i].value;
      sq[i] += mc.scores[i].value * mc.scores[i].value;
    }
  }
  for (std::size_t i = 0; i < 8; ++i) {
    const double mean = sum[i] / seeds;
    const double var = std::max(0.0, sq[i] / seeds - mean * mean);
    const double se = std::sqrt(var / seeds);
    EXPECT_LE(std::abs(mean - exact.scores[i].value), 3 * se + 1e-12)
        << "fact " << exact.scores[i].id;
  }
}

TEST(KernelShapTest, OrOfTwo) {
  const BooleanFunction fn{{1, 2}, [](const Assignment& a) {
                             return a.Contains(1) || a.Contains(2);
                           }};
  const ShapleyReport r = KernelShap(fn, Db(fn), {0, 20});
  EXPECT_NEAR(r.scores[0].value, 0.5, 1e-9);
  EXPECT_NEAR(r.scores[1].value, 0.5, 1e-9);
  EXPECT_EQ(r.method, Method::kKernelShap);
}

TEST(KernelShapTest, DummyPadding) {
  const BooleanFunction fn = Single(1, {1, 2});
  const ShapleyReport r = KernelShap(fn, Db(fn), {0, 20});
  EXPECT_NEAR(r.scores[0].value, 1.0, 1e-9);
  EXPECT_NEAR(r.scores[1].value, 0.0, 1e-9);
}

TEST(KernelShapTest, RequiresTwoFacts) {
  const BooleanFunction fn = Single(1, {1});
  EXPECT_THROW(KernelShap(fn, Db(fn), {0, 20}), Error);
}

TEST(KernelShapTest, Deterministic) {
  const DnfLineage l = testing::RunningExample();
  const BooleanFunction fn = l.FixExogenous().AsFunction();
  EXPECT_EQ(KernelShap(fn, l.database(), {7, 3}).Values(),
            KernelShap(fn, l.database(), {7, 3}).Values());
}

TEST(KernelShapTest, EfficiencyWhenSampling) {
  const DnfLineage l = testing::RunningExample();
  const BooleanFunction fn = l.FixExogenous().AsFunction();
  const ShapleyReport r = KernelShap(fn, l.database(), {7, 3});
  double sum = 0;
  for (double v : r.Values()) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-9);
}

// Mean L1 error against exact over a 30-seed family, KernelSHAP vs Monte
// Carlo at the same samples per fact.
void CompareL1(std::size_t samples_per_fact) {
  const DnfLineage l = testing::RunningExample();
  const BooleanFunction fn = l.FixExogenous().AsFunction();
  const ShapleyReport exact = ExactReport();
  double kshap = 0, mc = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    kshap += L1L2(exact, KernelShap(fn, l.database(), {seed, samples_per_fact})).first;
    mc += L1L2(exact, MonteCarlo(fn, l.database(), {seed, samples_per_fact})).first;
  }
  EXPECT_LT(kshap, mc) << "samples per fact " << samples_per_fact;
}

TEST(KernelShapTest, BeatsMonteCarloFullBudget) { CompareL1(50); }
TEST(KernelShapTest, BeatsMonteCarloSampled) { CompareL1(10); }

}  // namespace
}  // namespace shapdb
