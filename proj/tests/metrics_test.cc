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

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "shapdb/errors.h"
#include "shapdb/generator.h"
#include "shapdb/inexact.h"
#include "shapdb/metrics.h"
#include "shapdb/pipeline.h"

namespace shapdb {
namespace {

using testing::Endogenous;
using testing::Q;

ShapleyReport Real(const std::vector<double>& values) {
  std::vector<std::pair<FactId, double>> rows;
  for (std::size_t i = 0; i < values.size(); ++i) {
    rows.emplace_back(static_cast<FactId>(i + 1), values[i]);
  }
  return MakeRealReport(Method::kMonteCarlo, *Endogenous(values.size()), rows);
}

ShapleyReport Exact(const std::vector<Rational>& values) {
  std::vector<std::pair<FactId, Rational>> rows;
  for (std::size_t i = 0; i < values.size(); ++i) {
    rows.emplace_back(static_cast<FactId>(i + 1), values[i]);
  }
  return MakeExactReport(Method::kExactDdnnf, *Endogenous(values.size()), rows);
}

TEST(NdcgTest, PerfectAndReversed) {
  const ShapleyReport truth = Exact({Q(1), Q(1, 2), Q(1, 4)});
  EXPECT_DOUBLE_EQ(Ndcg(truth, Real({3, 2, 1})), 1.0);
  // DCG 1.0654648767857289 over IDCG 1.4404648767857289.
  EXPECT_NEAR(Ndcg(truth, Real({0.25, 0.5, 1})), 0.7396673768007592, 1e-15);
}

TEST(NdcgTest, ZeroIdeal) {
  EXPECT_EQ(Ndcg(Exact({Q(0), Q(0)}), Real({1, 2})), 1.0);
}

TEST(NdcgTest, Errors) {
  EXPECT_THROW(Ndcg(Exact({}), Real({})), InputError);
  EXPECT_THROW(Ndcg(Exact({Q(-1), Q(1)}), Real({1, 2})), InputError);
  EXPECT_THROW(Ndcg(Exact({Q(1), Q(1)}), Real({1, 2, 3})), InputError);
}

TEST(PrecisionTest, Basics) {
  const ShapleyReport truth = Exact({Q(4), Q(3), Q(2), Q(1)});
  const ShapleyReport est = Real({4, 1, 3, 2});
  EXPECT_EQ(PrecisionAtK(truth, est, 1), 1.0);
  EXPECT_EQ(PrecisionAtK(truth, est, 2), 0.5);
  EXPECT_EQ(PrecisionAtK(truth, est, 4), 1.0);
  EXPECT_THROW(PrecisionAtK(truth, est, 0), InputError);
  EXPECT_THROW(PrecisionAtK(truth, est, 5), InputError);
}

TEST(PrecisionTest, ProxyMissesTopFactOnRunningExample) {
  const DnfLineage l = testing::RunningExample();
  const ShapleyReport exact = ExactPipeline(CircuitFromDnf(l));
  const ShapleyReport proxy =
      CnfProxyReport(PrepareCnf(CircuitFromDnf(l.FixExogenous())));
  EXPECT_EQ(exact.Ranking().front(), 1u);
  EXPECT_EQ(PrecisionAtK(exact, proxy, 1), 0.0);
}

TEST(L1L2Test, PrintedProxyValuesOnQ2) {
  // Exact 11/60 (a2..a5), 2/15 (a6, a7) against 5/132 and 1/66.
  const ShapleyReport truth =
      Exact({Q(0), Q(11, 60), Q(11, 60), Q(11, 60), Q(11, 60), Q(2, 15),
             Q(2, 15), Q(0)});
  const double a = 5.0 / 132, b = 1.0 / 66;
  const auto [l1, l2] = L1L2(truth, Real({0, a, a, a, a, b, b, 0}));
  EXPECT_NEAR(l1, 9.0 / 88, 1e-15);
  EXPECT_NEAR(l2, 681.0 / 48400, 1e-15);
}

TEST(CompareTest, PrecisionKeysAndScaleInvariance) {
  const ShapleyReport truth =
      Exact({Q(5), Q(1), Q(3), Q(2), Q(4), Q(0), Q(7), Q(6), Q(9), Q(8), Q(10)});
  const std::vector<double> est = {4, 2, 3, 1, 5, 0.5, 6, 7, 9, 8, 11};
  std::vector<double> scaled;
  for (double v : est) scaled.push_back(3.5 * v);
  const RankingComparison a = Compare(truth, Real(est));
  const RankingComparison b = Compare(truth, Real(scaled));
  EXPECT_EQ(a.precision.size(), 4u);
  EXPECT_EQ(a.precision.count(10), 1u);
  EXPECT_DOUBLE_EQ(a.ndcg, b.ndcg);
  EXPECT_EQ(a.precision, b.precision);
  EXPECT_GE(a.ndcg, 0.0);
  EXPECT_LE(a.ndcg, 1.0);
  const RankingComparison small =
      Compare(Exact({Q(1), Q(2)}), Real({1, 2}));
  EXPECT_EQ(small.precision.size(), 1u);  // only k = 1 fits
}

TEST(HybridTest, ZeroTimeoutFallsBack) {
  const BooleanCircuit c = CircuitFromDnf(testing::RunningExample());
  HybridOptions options;
  options.timeout_seconds = 0;
  const ShapleyReport r = Hybrid(c, options);
  EXPECT_EQ(r.method, Method::kProxy);
  EXPECT_FALSE(r.comparable);
  EXPECT_EQ(r.note.rfind("fallback to proxy (timeout", 0), 0u) << r.note;
  EXPECT_EQ(r.scores.size(), 8u);
}

TEST(HybridTest, UnlimitedIsExact) {
  const BooleanCircuit c = CircuitFromDnf(testing::RunningExample());
  HybridOptions options;
  options.timeout_seconds = INFINITY;
  const ShapleyReport r = Hybrid(c, options);
  EXPECT_EQ(r.method, Method::kExactDdnnf);
  EXPECT_EQ(*r.Find(1)->exact, Q(43, 105));
}

TEST(HybridTest, BudgetExhausted) {
  const BooleanCircuit c = CircuitFromDnf(testing::RunningExample());
  HybridOptions options;
  options.node_budget = 1;
  const ShapleyReport r = Hybrid(c, options);
  EXPECT_EQ(r.method, Method::kProxy);
  EXPECT_NE(r.note.find("budget exhausted"), std::string::npos) << r.note;
  options.fallback = false;
  EXPECT_THROW(Hybrid(c, options), BudgetExhaustedError);
  options.node_budget = CompileOptions{}.node_budget;
  options.timeout_seconds = 0;
  EXPECT_THROW(Hybrid(c, options), TimeoutError);
}

TEST(GeneratorTest, Dnf) {
  DnfSpec spec;
  spec.n_facts = 10;
  spec.n_monomials = 7;
  spec.monomial_width = 3;
  spec.n_exogenous = 2;
  spec.seed = 5;
  const DnfLineage a = GenerateDnf(spec);
  EXPECT_EQ(a.monomials().size(), 7u);
  EXPECT_EQ(a.database().Endogenous().size(), 10u);
  EXPECT_EQ(a.database().Exogenous().size(), 2u);
  EXPECT_EQ(a.database().Get(1).label, "f1");
  for (const auto& m : a.monomials()) {
    EXPECT_EQ(m.size(), 3u);
    EXPECT_EQ(std::set<FactId>(m.begin(), m.end()).size(), m.size());
  }
  EXPECT_EQ(WriteDnf(GenerateDnf(spec)), WriteDnf(a));
  spec.seed = 6;
  EXPECT_NE(WriteDnf(GenerateDnf(spec)), WriteDnf(a));
}

TEST(GeneratorTest, CorpusRanges) {
  CorpusSpec spec;
  spec.count = 50;
  spec.min_facts = 3;
  spec.max_facts = 6;
  spec.min_monomials = 2;
  spec.max_monomials = 4;
  spec.max_width = 2;
  spec.max_exogenous = 1;
  const std::vector<DnfLineage> corpus = GenerateCorpus(spec);
  ASSERT_EQ(corpus.size(), 50u);
  for (const DnfLineage& l : corpus) {
    const std::size_t n = l.database().Endogenous().size();
    EXPECT_GE(n, 3u);
    EXPECT_LE(n, 6u);
    EXPECT_GE(l.monomials().size(), 2u);
    EXPECT_LE(l.monomials().size(), 4u);
    EXPECT_LE(l.database().Exogenous().size(), 1u);
    for (const auto& m : l.monomials()) {
      EXPECT_GE(m.size(), 1u);
      EXPECT_LE(m.size(), 2u);
    }
  }
}

TEST(GeneratorTest, Circuit) {
  CircuitSpec spec;
  spec.n_facts = 5;
  spec.n_gates = 9;
  spec.max_fanin = 3;
  spec.seed = 2;
  const BooleanCircuit a = GenerateCircuit(spec);
  EXPECT_TRUE(a.has_output());
  EXPECT_EQ(a.database().Endogenous().size(), 5u);
  for (const Gate& g : a.gates()) EXPECT_LE(g.inputs.size(), 3u);
  EXPECT_EQ(WriteCircuitJson(GenerateCircuit(spec)), WriteCircuitJson(a));
}

}  // namespace
}  // namespace shapdb
