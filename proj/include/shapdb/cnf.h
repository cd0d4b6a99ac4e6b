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

// CNF formulas and the Tseytin encoding of circuits.

#ifndef SHAPDB_CNF_H_
#define SHAPDB_CNF_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "shapdb/circuit.h"
#include "shapdb/lineage.h"

namespace shapdb {

// DIMACS-style literal: +v or -v, v >= 1.
using Literal = int;
using Clause = std::vector<Literal>;

inline int VarOf(Literal l) { return l < 0 ? -l : l; }

enum class VarRole : std::uint8_t { kUnused, kEndogenous, kAuxiliary };

// Which CNF variables are endogenous facts and which are auxiliary (the
// Tseytin set Z). Index 0 is unused.
class VarMap {
 public:
  VarMap() : roles_(1, VarRole::kUnused) {}
  explicit VarMap(int num_vars) : roles_(num_vars + 1, VarRole::kUnused) {}

  int num_vars() const { return static_cast<int>(roles_.size()) - 1; }
  void Resize(int num_vars);

  VarRole role(int var) const;
  void SetEndogenous(int var, std::string label);
  void SetAuxiliary(int var);

  bool IsEndogenous(int var) const { return role(var) == VarRole::kEndogenous; }
  bool IsAuxiliary(int var) const { return role(var) == VarRole::kAuxiliary; }

  std::vector<int> EndogenousVars() const;
  std::vector<int> AuxiliaryVars() const;
  const std::map<int, std::string>& labels() const { return labels_; }

  // Database whose facts are the endogenous variables (id = variable).
  DatabasePtr ToDatabase() const;

 private:
  std::vector<VarRole> roles_;
  std::map<int, std::string> labels_;
};

struct CnfFormula {
  std::vector<Clause> clauses;
  VarMap vars;

  int num_vars() const { return vars.num_vars(); }

  // Variables that occur in at least one clause, sorted.
  std::vector<int> OccurringVars() const;

  // Truth value under a full valuation (values[v] for v = 1..num_vars).
  bool Evaluate(const std::vector<char>& values) const;
};

// Index of the first clause mentioning a variable twice, or -1.
long FindRepeatedVariableClause(const CnfFormula& cnf);

// Tseytin encoding with full (iff) gate definitions. Var gates reuse the
// fact id as CNF variable; every other reachable gate gets one auxiliary
// variable, numbered from max(endogenous id, fact ids in the circuit) + 1 in
// preorder from the output. Clauses: the unit clause on the output first,
// then per gate (preorder) its binary clauses followed by the long one.
//   Or(z; g1..gm):  (z v -gi) for all i,  (-z v g1 v .. v gm)
//   And(z; g1..gm): (-z v gi) for all i,  (z v -g1 v .. v -gm)
//   Not(z; g):      (z v g), (-z v -g)
//   True: (z)   False: (-z)
CnfFormula Tseytin(const BooleanCircuit& circuit);

// Largest |vars(C')| + |Z| the exhaustive check accepts.
inline constexpr std::size_t kEquisatisfiableLimit = 24;

// Exhaustively checks that every satisfying valuation of the circuit has
// exactly one satisfying extension to the auxiliary variables and every
// falsifying valuation has none.
bool CheckEquisatisfiable(const BooleanCircuit& circuit,
                          const CnfFormula& cnf);

// DIMACS with "c endo <var> <label>" comment lines for endogenous variables;
// every other variable is auxiliary.
CnfFormula ParseDimacs(std::istream& in, const std::string& source = "");
CnfFormula ReadDimacsFile(const std::string& path);
std::string WriteDimacs(const CnfFormula& cnf);

}  // namespace shapdb

#endif  // SHAPDB_CNF_H_
