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

// Fast inexact scorers: the CNF proxy (Shapley values of the clause-sum
// relaxation of a CNF), permutation sampling and KernelSHAP.

#ifndef SHAPDB_INEXACT_H_
#define SHAPDB_INEXACT_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "shapdb/cnf.h"
#include "shapdb/lineage.h"
#include "shapdb/numeric.h"
#include "shapdb/report.h"

namespace shapdb {

struct ProxyContribution {
  std::size_t clause = 0;
  int var = 0;
  Rational delta;
};

struct ProxyScore {
  std::size_t num_clauses = 0;
  std::vector<std::pair<int, Rational>> values;  // per endogenous var
  std::vector<ProxyContribution> trace;          // filled on request
};

// Each clause of m literals adds 1/(n m C(m-1, |neg|)) to its positive
// endogenous literals and subtracts 1/(n m C(m-1, |pos|)) from its negative
// ones, n being the number of clauses; auxiliary variables score nothing.
// Throws InputError naming the first clause that repeats a variable.
ProxyScore CnfProxy(const CnfFormula& cnf, bool trace = false);

// The proxy as a report over cnf.vars.ToDatabase(); not Shapley-comparable.
ShapleyReport CnfProxyReport(const CnfFormula& cnf);

// Number of samples expressed per fact: permutation sampling draws
// samples_per_fact permutations, KernelSHAP samples_per_fact * n coalitions.
struct SampleBudget {
  std::uint64_t seed = 0;
  std::size_t samples_per_fact = 20;
};

// Average marginal contribution over uniformly random permutations of
// fn.variables. `db` supplies the labels.
ShapleyReport MonteCarlo(const BooleanFunction& fn, const Database& db,
                         const SampleBudget& budget);

// Ridge added to the normal equations when they are singular.
inline constexpr double kKernelShapRidge = 1e-9;

// Weighted least squares on sampled coalitions with Shapley-kernel weights,
// constrained to sum to fn(D_n) - fn(empty). Sizes s and n-s are paired;
// small sizes are enumerated completely while the budget covers them, the
// rest are drawn in proportion to their kernel mass, each draw together with
// its complement. A budget of 2^n - 2 or more enumerates every coalition.
// Requires |fn.variables| >= 2.
ShapleyReport KernelShap(const BooleanFunction& fn, const Database& db,
                         const SampleBudget& budget);

}  // namespace shapdb

#endif  // SHAPDB_INEXACT_H_
