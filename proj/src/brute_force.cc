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

#include "shapdb/brute_force.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "shapdb/errors.h"

namespace shapdb {

void CheckBruteForceSize(std::size_t n) {
  if (n > kBruteForceLimit) {
    throw TooLargeError("instance too large for brute force: " +
                        std::to_string(n) + " players (limit " +
                        std::to_string(kBruteForceLimit) + ")");
  }
}

void ForEachSubset(
    const std::vector<FactId>& players,
    const std::function<void(const Assignment&, std::size_t)>& visit) {
  CheckBruteForceSize(players.size());
  Assignment nu;
  std::size_t size = 0;
  visit(nu, 0);
  const std::uint64_t total = std::uint64_t{1} << players.size();
  for (std::uint64_t step = 1; step < total; ++step) {
    // The Gray code of `step` differs from that of `step - 1` in one bit.
    const int bit = std::countr_zero(step);
    const FactId id = players[bit];
    if (nu.Contains(id)) {
      nu.Erase(id);
      --size;
    } else {
      nu.Insert(id);
      ++size;
    }
    visit(nu, size);
  }
}

BigInt CountSlices(const BooleanFunction& fn, std::size_t k) {
  if (k > fn.variables.size()) {
    throw InputError("slice size " + std::to_string(k) + " exceeds " +
                     std::to_string(fn.variables.size()) + " variables");
  }
  return CountAllSlices(fn)[k];
}

std::vector<BigInt> CountAllSlices(const BooleanFunction& fn) {
  std::vector<std::uint64_t> counts(fn.variables.size() + 1, 0);
  ForEachSubset(fn.variables, [&](const Assignment& nu, std::size_t size) {
    if (fn(nu)) ++counts[size];
  });
  std::vector<BigInt> out;
  out.reserve(counts.size());
  for (std::uint64_t c : counts) out.emplace_back(static_cast<unsigned long>(c));
  return out;
}

namespace {

std::vector<FactId> Others(const std::vector<FactId>& players, FactId f) {
  CheckBruteForceSize(players.size());
  if (std::find(players.begin(), players.end(), f) == players.end()) {
    throw InputError("fact " + std::to_string(f) +
                     " is not an endogenous variable of the function");
  }
  std::vector<FactId> out;
  for (FactId id : players) {
    if (id != f) out.push_back(id);
  }
  return out;
}

}  // namespace

Rational BruteForceShapley(const BooleanFunction& fn, FactId f) {
  const std::vector<FactId> others = Others(fn.variables, f);
  const std::size_t n = fn.variables.size();
  // Marginal contributions are integers in {-1, 0, 1}; accumulate per size.
  std::vector<std::int64_t> per_size(n, 0);
  ForEachSubset(others, [&](const Assignment& e, std::size_t size) {
    Assignment with_f = e;
    with_f.Insert(f);
    per_size[size] += static_cast<int>(fn(with_f)) - static_cast<int>(fn(e));
  });
  const std::vector<Rational> weights = ShapleyCoefficients(n);
  Rational total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    total += weights[k] * static_cast<long>(per_size[k]);
  }
  total.canonicalize();
  return total;
}

Rational BruteForceShapleyViaSlices(const BooleanFunction& fn, FactId f) {
  const std::vector<FactId> others = Others(fn.variables, f);
  BooleanFunction with_f{others, [&](const Assignment& e) {
                           Assignment copy = e;
                           copy.Insert(f);
                           return fn(copy);
                         }};
  BooleanFunction without_f{others, [&](const Assignment& e) {
                              Assignment copy = e;
                              copy.Erase(f);
                              return fn(copy);
                            }};
  const std::vector<BigInt> present = CountAllSlices(with_f);
  const std::vector<BigInt> absent = CountAllSlices(without_f);
  const std::vector<Rational> weights = ShapleyCoefficients(fn.variables.size());
  Rational total = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    total += weights[k] * Rational(present[k] - absent[k]);
  }
  total.canonicalize();
  return total;
}

Rational BruteForceShapleyChecked(const BooleanFunction& fn, FactId f) {
  Rational direct = BruteForceShapley(fn, f);
  const Rational grouped = BruteForceShapleyViaSlices(fn, f);
  if (direct != grouped) {
    throw ConsistencyError("brute-force Shapley routes disagree for fact " +
                           std::to_string(f) + ": " + ToString(direct) +
                           " vs " + ToString(grouped));
  }
  return direct;
}

Rational BruteForceShapleyGame(const std::vector<FactId>& players,
                               const RationalGame& game, FactId f) {
  const std::vector<FactId> others = Others(players, f);
  const std::vector<Rational> weights = ShapleyCoefficients(players.size());
  Rational total = 0;
  ForEachSubset(others, [&](const Assignment& e, std::size_t size) {
    Assignment with_f = e;
    with_f.Insert(f);
    total += weights[size] * (game(with_f) - game(e));
  });
  total.canonicalize();
  return total;
}

}  // namespace shapdb
