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

// Shapley values through probabilistic query evaluation: probabilities of
// deterministic and decomposable circuits over tuple-independent databases,
// interpolation of the slice counts, and the size-grouped Shapley sum.

#ifndef SHAPDB_PQE_H_
#define SHAPDB_PQE_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "shapdb/circuit.h"
#include "shapdb/ddnnf.h"
#include "shapdb/lineage.h"
#include "shapdb/numeric.h"
#include "shapdb/report.h"

namespace shapdb {

// Fact probabilities in [0, 1]; facts without an entry have probability 1.
class ProbabilityMap {
 public:
  ProbabilityMap() = default;

  void Set(FactId fact, const Rational& p);
  const Rational& Get(FactId fact) const;
  const std::map<FactId, Rational>& entries() const { return entries_; }

 private:
  std::map<FactId, Rational> entries_;
  Rational one_ = 1;
};

// Two columns per line: "<fact id> <probability>", the probability written
// as a fraction ("1/3") or a decimal ("0.25"). '#' starts a comment.
ProbabilityMap ParseProbabilities(std::istream& in,
                                  const std::string& source = "");
ProbabilityMap ReadProbabilityFile(const std::string& path);

// Exact decimal or fraction literal ("0.25", "1/4", "3").
Rational ParseRational(const std::string& text);

// Probability that a deterministic and decomposable circuit is true when
// each fact is present independently with its probability.
Rational ProbDdnnf(const BooleanCircuit& circuit, const ProbabilityMap& pi);
Rational ProbDdnnf(const Ddnnf& ddnnf, DatabasePtr universe,
                   const ProbabilityMap& pi);

// counts[k] = number of size-k subsets of `players` satisfying the circuit,
// recovered from its probabilities at z = 1..n+1 (each player present with
// probability z/(1+z)) by exact interpolation. vars(circuit) must be among
// the players. Throws ConsistencyError if the solution is not integral.
std::vector<BigInt> SlicesViaVandermonde(const BooleanCircuit& circuit,
                                         const std::vector<FactId>& players);
// Over all endogenous facts of the circuit's database.
std::vector<BigInt> SlicesViaVandermonde(const BooleanCircuit& circuit);

Rational ShapleyViaPqe(const BooleanCircuit& circuit, FactId f);
ShapleyReport ShapleyViaPqeAll(const BooleanCircuit& circuit);

// Exhaustive sum over the subsets of fn.variables.
Rational BruteForcePqe(const BooleanFunction& fn, const ProbabilityMap& pi);

}  // namespace shapdb

#endif  // SHAPDB_PQE_H_
