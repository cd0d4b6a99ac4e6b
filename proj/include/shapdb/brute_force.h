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

// Exhaustive-enumeration oracles. Every routine here refuses instances with
// more than kBruteForceLimit players.

#ifndef SHAPDB_BRUTE_FORCE_H_
#define SHAPDB_BRUTE_FORCE_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "shapdb/lineage.h"
#include "shapdb/numeric.h"

namespace shapdb {

inline constexpr std::size_t kBruteForceLimit = 22;

// Number of size-k subsets E of fn.variables with fn(E) = 1.
BigInt CountSlices(const BooleanFunction& fn, std::size_t k);

// CountSlices for every k = 0..|variables| in a single sweep.
std::vector<BigInt> CountAllSlices(const BooleanFunction& fn);

// Shapley value of `f` straight from the permutation-weighted definition.
Rational BruteForceShapley(const BooleanFunction& fn, FactId f);

// Same value, obtained by grouping subsets by size and combining slice
// counts of fn with f forced present and forced absent.
Rational BruteForceShapleyViaSlices(const BooleanFunction& fn, FactId f);

// Computes both of the above and throws ConsistencyError if they differ.
Rational BruteForceShapleyChecked(const BooleanFunction& fn, FactId f);

// Shapley value of a player in an arbitrary rational-valued game.
using RationalGame = std::function<Rational(const Assignment&)>;
Rational BruteForceShapleyGame(const std::vector<FactId>& players,
                               const RationalGame& game, FactId f);

// Visits every subset of `players` once (Gray-code order), passing the
// current assignment and its size.
void ForEachSubset(const std::vector<FactId>& players,
                   const std::function<void(const Assignment&, std::size_t)>&
                       visit);

void CheckBruteForceSize(std::size_t n);

}  // namespace shapdb

#endif  // SHAPDB_BRUTE_FORCE_H_
