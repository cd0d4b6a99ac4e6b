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

// Decision-DNNF circuits: the built-in CNF compiler, the NNF file format of
// the c2d compiler family, and removal of Tseytin variables.

#ifndef SHAPDB_DDNNF_H_
#define SHAPDB_DDNNF_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "shapdb/circuit.h"
#include "shapdb/cnf.h"
#include "shapdb/deadline.h"
#include "shapdb/numeric.h"

namespace shapdb {

using NodeId = std::uint32_t;

enum class NnfKind { kLit, kAnd, kOr };

// Constants are the empty gates: And() is true, Or() is false.
struct NnfNode {
  NnfKind kind = NnfKind::kAnd;
  Literal literal = 0;   // kLit only
  int decision = 0;      // kOr only; 0 when the producer gave none
  std::vector<NodeId> children;
};

class Ddnnf {
 public:
  Ddnnf() = default;

  NodeId AddLiteral(Literal literal);
  NodeId AddAnd(std::vector<NodeId> children);
  NodeId AddOr(std::vector<NodeId> children, int decision = 0);
  NodeId AddTrue() { return AddAnd({}); }
  NodeId AddFalse() { return AddOr({}); }
  NodeId AddNode(NnfNode node);

  void SetRoot(NodeId root);

  const std::vector<NnfNode>& nodes() const { return nodes_; }
  const NnfNode& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }
  std::size_t EdgeCount() const;
  NodeId root() const { return root_; }
  bool empty() const { return nodes_.empty(); }

  bool IsTrue(NodeId id) const;
  bool IsFalse(NodeId id) const;

  VarMap& vars() { return vars_; }
  const VarMap& vars() const { return vars_; }

  Determinism determinism() const { return determinism_; }
  void set_determinism(Determinism d) { determinism_ = d; }

  // Truth value under values[v], v = 1..vars().num_vars().
  bool Evaluate(const std::vector<char>& values) const;

 private:
  std::vector<NnfNode> nodes_;
  NodeId root_ = 0;
  VarMap vars_;
  Determinism determinism_ = Determinism::kTrusted;
};

struct CompileOptions {
  // Maximum number of d-DNNF nodes before giving up.
  std::size_t node_budget = 5'000'000;
  const Deadline* deadline = nullptr;
};

struct CompileStats {
  std::size_t decisions = 0;
  std::size_t cache_hits = 0;
  std::size_t components = 0;
};

// Top-down exhaustive-search compilation: unit propagation, splitting into
// variable-disjoint components (decomposable And), and Shannon expansion on
// the most frequent variable, ties to the lowest id (deterministic Or).
// Residual components are cached on their canonical clause lists. Throws
// BudgetExhaustedError past options.node_budget, TimeoutError past the
// deadline.
Ddnnf Compile(const CnfFormula& cnf, const CompileOptions& options = {},
              CompileStats* stats = nullptr);

// Removes unsatisfiable nodes, then nodes unreachable from the root, then
// replaces every literal over `auxiliary` by true. Applied to a d-DNNF of a
// Tseytin encoding, the result is equivalent to the encoded circuit.
Ddnnf PurgeTseytin(const Ddnnf& compiled, const std::vector<int>& auxiliary);
Ddnnf PurgeTseytin(const Ddnnf& compiled);  // auxiliaries from vars()

// NNF text format:
//   nnf <nodes> <edges> <vars>
//   L <lit>
//   A <c> <i1> .. <ic>
//   O <decision> <c> <i1> .. <ic>
// Node ids are 0-based line positions; the last node is the root.
Ddnnf ParseNnf(std::istream& in, const std::string& source = "");
Ddnnf ReadNnfFile(const std::string& path);
std::string WriteNnf(const Ddnnf& ddnnf);

// The d-DNNF as a circuit over `universe`; negative literals become Not
// gates. Every literal must name a fact of `universe`.
BooleanCircuit ToCircuit(const Ddnnf& ddnnf, DatabasePtr universe);

// Number of models over `over` (which must contain every variable used).
BigInt CountModels(const Ddnnf& ddnnf, const std::vector<int>& over);

}  // namespace shapdb

#endif  // SHAPDB_DDNNF_H_
