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

// Ranking-quality metrics comparing an estimated report to exact values.

#ifndef SHAPDB_METRICS_H_
#define SHAPDB_METRICS_H_

#include <cstddef>
#include <map>
#include <utility>

#include "shapdb/report.h"

namespace shapdb {

// DCG of the estimate's ranking with gain = exact value and discount
// 1/log2(rank+1), over the DCG of the exact ranking. 1 when the ideal DCG is
// zero. Truth values must be nonnegative.
double Ndcg(const ShapleyReport& truth, const ShapleyReport& estimate);

// |top-k(truth) & top-k(estimate)| / k, 1 <= k <= number of facts.
double PrecisionAtK(const ShapleyReport& truth, const ShapleyReport& estimate,
                    std::size_t k);

// Mean absolute and mean squared difference of the values.
std::pair<double, double> L1L2(const ShapleyReport& truth,
                               const ShapleyReport& estimate);

struct RankingComparison {
  double ndcg = 0;
  std::map<std::size_t, double> precision;  // k in {1,3,5,10}, k <= facts
  double l1 = 0;
  double l2 = 0;
};

RankingComparison Compare(const ShapleyReport& truth,
                          const ShapleyReport& estimate);

}  // namespace shapdb

#endif  // SHAPDB_METRICS_H_
