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

#include "shapdb/metrics.h"

#include <cmath>
#include <string>
#include <unordered_set>

#include "shapdb/errors.h"

namespace shapdb {

namespace {

void CheckSameFacts(const ShapleyReport& truth, const ShapleyReport& estimate) {
  if (truth.scores.size() != estimate.scores.size()) {
    throw InputError("reports cover different fact sets");
  }
  for (std::size_t i = 0; i < truth.scores.size(); ++i) {
    if (truth.scores[i].id != estimate.scores[i].id) {
      throw InputError("reports cover different fact sets (fact " +
                       std::to_string(truth.scores[i].id) + ")");
    }
  }
}

double Gain(const FactScore& s) {
  return s.exact ? ToDouble(*s.exact) : s.value;
}

double Dcg(const ShapleyReport& truth, const std::vector<FactId>& ranking) {
  double dcg = 0;
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    dcg += Gain(*truth.Find(ranking[r])) / std::log2(r + 2.0);
  }
  return dcg;
}

}  // namespace

double Ndcg(const ShapleyReport& truth, const ShapleyReport& estimate) {
  CheckSameFacts(truth, estimate);
  if (truth.scores.empty()) throw InputError("nDCG of an empty fact set");
  for (const FactScore& s : truth.scores) {
    if (Gain(s) < 0) {
      throw InputError("nDCG needs nonnegative truth values (fact " +
                       std::to_string(s.id) + ")");
    }
  }
  const double ideal = Dcg(truth, truth.Ranking());
  if (ideal == 0) return 1.0;
  return Dcg(truth, estimate.Ranking()) / ideal;
}

double PrecisionAtK(const ShapleyReport& truth, const ShapleyReport& estimate,
                    std::size_t k) {
  CheckSameFacts(truth, estimate);
  if (k < 1 || k > truth.scores.size()) {
    throw InputError("precision@" + std::to_string(k) + " needs 1 <= k <= " +
                     std::to_string(truth.scores.size()));
  }
  const std::vector<FactId> a = truth.Ranking();
  const std::vector<FactId> b = estimate.Ranking();
  const std::unordered_set<FactId> top(a.begin(), a.begin() + k);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < k; ++i) hits += top.count(b[i]);
  return static_cast<double>(hits) / static_cast<double>(k);
}

std::pair<double, double> L1L2(const ShapleyReport& truth,
                               const ShapleyReport& estimate) {
  CheckSameFacts(truth, estimate);
  if (truth.scores.empty()) return {0.0, 0.0};
  double l1 = 0, l2 = 0;
  for (std::size_t i = 0; i < truth.scores.size(); ++i) {
    const double d = estimate.scores[i].value - Gain(truth.scores[i]);
    l1 += std::fabs(d);
    l2 += d * d;
  }
  const double n = static_cast<double>(truth.scores.size());
  return {l1 / n, l2 / n};
}

RankingComparison Compare(const ShapleyReport& truth,
                          const ShapleyReport& estimate) {
  RankingComparison out;
  out.ndcg = Ndcg(truth, estimate);
  for (std::size_t k : {1, 3, 5, 10}) {
    if (k <= truth.scores.size()) {
      out.precision[k] = PrecisionAtK(truth, estimate, k);
    }
  }
  std::tie(out.l1, out.l2) = L1L2(truth, estimate);
  return out;
}

}  // namespace shapdb
