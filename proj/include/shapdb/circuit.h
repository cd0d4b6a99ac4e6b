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

// Boolean circuits over database facts, with the structural analysis and
// rewrites needed by the stratified model counter.

#ifndef SHAPDB_CIRCUIT_H_
#define SHAPDB_CIRCUIT_H_

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "shapdb/lineage.h"

namespace shapdb {

using GateId = std::uint32_t;

enum class GateKind { kVar, kNot, kAnd, kOr, kTrue, kFalse };

std::string GateKindName(GateKind kind);

struct Gate {
  GateKind kind = GateKind::kFalse;
  std::vector<GateId> inputs;
  FactId fact = 0;  // kVar only
};

// Where the claim "every Or-gate is deterministic" comes from.
enum class Determinism {
  kUnknown,  // nobody vouched for it
  kChecked,  // verified exhaustively
  kTrusted,  // guaranteed by the producer (compiler, external NNF file)
};

std::string DeterminismName(Determinism d);

// A DAG of gates numbered topologically: every input id is smaller than the
// id of the gate using it. Built incrementally, then treated as a value.
class BooleanCircuit {
 public:
  explicit BooleanCircuit(DatabasePtr universe);

  GateId AddVar(FactId fact);
  GateId AddNot(GateId input);
  GateId AddAnd(std::vector<GateId> inputs);
  GateId AddOr(std::vector<GateId> inputs);
  GateId AddTrue();
  GateId AddFalse();
  GateId AddGate(Gate gate);

  void SetOutput(GateId output);

  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& gate(GateId id) const { return gates_.at(id); }
  std::size_t size() const { return gates_.size(); }
  GateId output() const { return output_; }
  bool has_output() const { return has_output_; }

  const Database& database() const { return *universe_; }
  const DatabasePtr& database_ptr() const { return universe_; }

  Determinism determinism() const { return determinism_; }
  void set_determinism(Determinism d) { determinism_ = d; }

 private:
  DatabasePtr universe_;
  std::vector<Gate> gates_;
  GateId output_ = 0;
  bool has_output_ = false;
  Determinism determinism_ = Determinism::kUnknown;
};

// vars(g) for every gate, as bitsets indexed by fact id.
class VarsTable {
 public:
  VarsTable() = default;
  explicit VarsTable(std::vector<boost::dynamic_bitset<>> sets)
      : sets_(std::move(sets)) {}

  const boost::dynamic_bitset<>& bits(GateId g) const { return sets_.at(g); }
  std::vector<FactId> Vars(GateId g) const;
  std::size_t Count(GateId g) const { return sets_.at(g).count(); }
  std::size_t size() const { return sets_.size(); }

 private:
  std::vector<boost::dynamic_bitset<>> sets_;
};

VarsTable ComputeVars(const BooleanCircuit& circuit);

// Values of all gates under nu.
std::vector<char> EvaluateGates(const BooleanCircuit& circuit,
                                const Assignment& nu);
bool Evaluate(const BooleanCircuit& circuit, const Assignment& nu);

// The circuit's function over D_n, for the oracles and samplers.
BooleanFunction AsFunction(const BooleanCircuit& circuit);

bool CheckDecomposable(const BooleanCircuit& circuit);

enum class DeterminismMode { kExhaustive, kTrusted };

enum class DeterminismVerdict { kDeterministic, kNotDeterministic, kTrusted };

// Largest |vars(g)| the exhaustive determinism check will enumerate.
inline constexpr std::size_t kDeterminismCheckLimit = 20;

// kExhaustive: enumerate the assignments of vars(g) for every Or-gate and
// check that no two inputs hold at once (TooLargeError above the limit).
// kTrusted: records the producer's guarantee, nothing is checked.
DeterminismVerdict CheckDeterministic(const BooleanCircuit& circuit,
                                      DeterminismMode mode);

// Every And/Or gets fan-in 0 or 2. m-ary gates are folded left; a single
// input gains a neutral constant sibling.
BooleanCircuit NormalizeFanin2(const BooleanCircuit& circuit);

// Every Var(fact) gate becomes a constant.
BooleanCircuit Substitute(const BooleanCircuit& circuit, FactId fact,
                          bool value);

// Conjoins (f v -f) for every fact of `endogenous` missing from vars(output).
BooleanCircuit CompleteVars(const BooleanCircuit& circuit,
                            const std::vector<FactId>& endogenous);

// Monotone DNF as a circuit. A lineage made of one single-fact monomial is
// that Var; one wider monomial is an And; otherwise an Or over one And per
// monomial (single-fact monomials included).
BooleanCircuit CircuitFromDnf(const DnfLineage& lineage);

// Replaces Var gates of exogenous facts by ConstTrue.
BooleanCircuit FixExogenousCircuit(const BooleanCircuit& circuit);

// JSON interchange:
//   {"facts": [{"id":1,"kind":"endo","label":"..."}...],
//    "gates": [{"id":0,"kind":"var","fact":1,"inputs":[]}...],
//    "output": <gate id>}
// Gate ids must equal their position; inputs must reference earlier gates.
BooleanCircuit ParseCircuitJson(const std::string& text,
                                const std::string& source = "");
BooleanCircuit ReadCircuitFile(const std::string& path);
std::string WriteCircuitJson(const BooleanCircuit& circuit);

}  // namespace shapdb

#endif  // SHAPDB_CIRCUIT_H_
