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

// Weight-stratified model counting on deterministic and decomposable
// circuits, and exact Shapley values from it.

#ifndef SHAPDB_SHAPLEY_EXACT_H_
#define SHAPDB_SHAPLEY_EXACT_H_

#include <vector>

#include "shapdb/circuit.h"
#include "shapdb/ddnnf.h"
#include "shapdb/deadline.h"
#include "shapdb/numeric.h"
#include "shapdb/report.h"

namespace shapdb {

// alpha[g][l] = number of satisfying assignments of vars(g) of weight l.
class SatKTable {
 public:
  SatKTable() = default;
  explicit SatKTable(std::vector<std::vector<BigInt>> rows)
      : rows_(std::move(rows)) {}

  const std::vector<BigInt>& row(GateId g) const { return rows_.at(g); }
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<std::vector<BigInt>> rows_;
};

// Throws PreconditionError unless every And/Or gate has fan-in 0 or 2, the
// circuit is decomposable and its determinism is checked or trusted.
void CheckStratifiedPreconditions(const BooleanCircuit& circuit);

SatKTable ComputeAllSatK(const BooleanCircuit& circuit,
                         const Deadline* deadline = nullptr);

// Shapley value of endogenous fact f. The circuit must be deterministic and
// decomposable over endogenous facts only; it is completed to D_n and
// normalized internally.
Rational ShapleyDdnnf(const BooleanCircuit& circuit, FactId f,
                      const Deadline* deadline = nullptr);
Rational ShapleyDdnnf(const Ddnnf& ddnnf, DatabasePtr universe, FactId f);

// Values for every endogenous fact; the completion, normalization and the
// counts of gates not depending on a fact are shared across facts. Throws
// ConsistencyError if the values violate efficiency.
ShapleyReport ShapleyAll(const BooleanCircuit& circuit,
                         const Deadline* deadline = nullptr);
ShapleyReport ShapleyAll(const Ddnnf& ddnnf, DatabasePtr universe,
                         const Deadline* deadline = nullptr);

}  // namespace shapdb

#endif  // SHAPDB_SHAPLEY_EXACT_H_
