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

#include "shapdb/cnf.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "shapdb/errors.h"

namespace shapdb {

void VarMap::Resize(int num_vars) {
  roles_.resize(num_vars + 1, VarRole::kUnused);
}

VarRole VarMap::role(int var) const {
  if (var <= 0 || var >= static_cast<int>(roles_.size())) {
    return VarRole::kUnused;
  }
  return roles_[var];
}

void VarMap::SetEndogenous(int var, std::string label) {
  if (var > num_vars()) Resize(var);
  roles_[var] = VarRole::kEndogenous;
  labels_[var] = std::move(label);
}

void VarMap::SetAuxiliary(int var) {
  if (var > num_vars()) Resize(var);
  roles_[var] = VarRole::kAuxiliary;
  labels_.erase(var);
}

std::vector<int> VarMap::EndogenousVars() const {
  std::vector<int> out;
  for (int v = 1; v <= num_vars(); ++v) {
    if (roles_[v] == VarRole::kEndogenous) out.push_back(v);
  }
  return out;
}

std::vector<int> VarMap::AuxiliaryVars() const {
  std::vector<int> out;
  for (int v = 1; v <= num_vars(); ++v) {
    if (roles_[v] == VarRole::kAuxiliary) out.push_back(v);
  }
  return out;
}

DatabasePtr VarMap::ToDatabase() const {
  std::vector<Fact> facts;
  for (int v : EndogenousVars()) {
    auto it = labels_.find(v);
    facts.push_back(Fact{static_cast<FactId>(v),
                         it != labels_.end() && !it->second.empty()
                             ? it->second
                             : "x" + std::to_string(v),
                         FactKind::kEndogenous});
  }
  return std::make_shared<Database>(std::move(facts));
}

std::vector<int> CnfFormula::OccurringVars() const {
  std::vector<int> out;
  for (const Clause& c : clauses) {
    for (Literal l : c) out.push_back(VarOf(l));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool CnfFormula::Evaluate(const std::vector<char>& values) const {
  for (const Clause& c : clauses) {
    bool satisfied = false;
    for (Literal l : c) {
      if ((values[VarOf(l)] != 0) == (l > 0)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return false;
  }
  return true;
}

long FindRepeatedVariableClause(const CnfFormula& cnf) {
  // seen[v] = 1 + index of the last clause mentioning v.
  std::vector<std::size_t> seen(cnf.num_vars() + 1, 0);
  for (std::size_t i = 0; i < cnf.clauses.size(); ++i) {
    for (Literal l : cnf.clauses[i]) {
      const std::size_t v = static_cast<std::size_t>(VarOf(l));
      if (v >= seen.size()) seen.resize(v + 1, 0);
      if (seen[v] == i + 1) return static_cast<long>(i);
      seen[v] = i + 1;
    }
  }
  return -1;
}

namespace {

// Drops repeated literals; returns false for a tautological clause.
bool Tidy(Clause* clause) {
  Clause out;
  for (Literal l : *clause) {
    if (std::find(out.begin(), out.end(), -l) != out.end()) return false;
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  }
  *clause = std::move(out);
  return true;
}

}  // namespace

CnfFormula Tseytin(const BooleanCircuit& circuit) {
  if (!circuit.has_output()) throw InputError("circuit has no output gate");
  const Database& db = circuit.database();
  int max_fact = static_cast<int>(db.MaxEndogenousId());
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::kVar) max_fact = std::max(max_fact, int(g.fact));
  }

  // Preorder over the gates reachable from the output.
  std::vector<int> literal(circuit.size(), 0);
  std::vector<GateId> order;
  std::vector<char> visited(circuit.size(), 0);
  std::vector<GateId> stack{circuit.output()};
  int next_aux = max_fact + 1;
  while (!stack.empty()) {
    const GateId g = stack.back();
    stack.pop_back();
    if (visited[g]) continue;
    visited[g] = 1;
    const Gate& gate = circuit.gate(g);
    if (gate.kind == GateKind::kVar) {
      literal[g] = static_cast<int>(gate.fact);
      continue;
    }
    literal[g] = next_aux++;
    order.push_back(g);
    for (auto it = gate.inputs.rbegin(); it != gate.inputs.rend(); ++it) {
      if (!visited[*it]) stack.push_back(*it);
    }
  }

  CnfFormula cnf;
  cnf.vars.Resize(next_aux - 1);
  for (const Fact& f : db.facts()) {
    if (f.endogenous()) cnf.vars.SetEndogenous(static_cast<int>(f.id), f.label);
  }
  for (GateId g : order) cnf.vars.SetAuxiliary(literal[g]);

  auto emit = [&](Clause clause) {
    if (Tidy(&clause)) cnf.clauses.push_back(std::move(clause));
  };
  emit({literal[circuit.output()]});
  for (GateId g : order) {
    const Gate& gate = circuit.gate(g);
    const int z = literal[g];
    switch (gate.kind) {
      case GateKind::kTrue:
        emit({z});
        break;
      case GateKind::kFalse:
        emit({-z});
        break;
      case GateKind::kNot: {
        const int in = literal[gate.inputs[0]];
        emit({z, in});
        emit({-z, -in});
        break;
      }
      case GateKind::kOr: {
        Clause wide{-z};
        for (GateId in : gate.inputs) {
          emit({z, -literal[in]});
          wide.push_back(literal[in]);
        }
        emit(std::move(wide));
        break;
      }
      case GateKind::kAnd: {
        Clause wide{z};
        for (GateId in : gate.inputs) {
          emit({-z, literal[in]});
          wide.push_back(-literal[in]);
        }
        emit(std::move(wide));
        break;
      }
      case GateKind::kVar:
        break;
    }
  }
  return cnf;
}

bool CheckEquisatisfiable(const BooleanCircuit& circuit,
                          const CnfFormula& cnf) {
  const VarsTable vars = ComputeVars(circuit);
  const std::vector<FactId> inputs = vars.Vars(circuit.output());
  std::vector<int> aux;
  for (int v : cnf.OccurringVars()) {
    if (!std::binary_search(inputs.begin(), inputs.end(),
                            static_cast<FactId>(v))) {
      aux.push_back(v);
    }
  }
  const std::size_t total = inputs.size() + aux.size();
  if (total > kEquisatisfiableLimit) {
    throw TooLargeError("equisatisfiability check refused: " +
                        std::to_string(total) + " variables");
  }
  // Local bit positions: inputs first, then auxiliaries.
  std::vector<int> position(cnf.num_vars() + 1, -1);
  for (std::size_t i = 0; i < inputs.size(); ++i) position[inputs[i]] = int(i);
  for (std::size_t i = 0; i < aux.size(); ++i) {
    position[aux[i]] = static_cast<int>(inputs.size() + i);
  }
  struct Masks {
    std::uint32_t pos = 0, neg = 0;
  };
  std::vector<Masks> clauses;
  for (const Clause& c : cnf.clauses) {
    Masks m;
    for (Literal l : c) {
      const int p = position[VarOf(l)];
      (l > 0 ? m.pos : m.neg) |= std::uint32_t{1} << p;
    }
    clauses.push_back(m);
  }
  const std::uint32_t input_count = std::uint32_t{1} << inputs.size();
  const std::uint32_t aux_count = std::uint32_t{1} << aux.size();
  for (std::uint32_t nu = 0; nu < input_count; ++nu) {
    Assignment assignment;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (nu >> i & 1U) assignment.Insert(inputs[i]);
    }
    const bool expected = Evaluate(circuit, assignment);
    std::size_t extensions = 0;
    for (std::uint32_t z = 0; z < aux_count && extensions < 2; ++z) {
      const std::uint32_t full = nu | (z << inputs.size());
      bool ok = true;
      for (const Masks& m : clauses) {
        if (!((full & m.pos) || (~full & m.neg))) {
          ok = false;
          break;
        }
      }
      if (ok) ++extensions;
    }
    if (extensions != (expected ? 1U : 0U)) return false;
  }
  return true;
}

CnfFormula ParseDimacs(std::istream& in, const std::string& source) {
  CnfFormula cnf;
  std::string line;
  std::size_t number = 0;
  long declared_vars = -1, declared_clauses = -1;
  std::vector<std::pair<int, std::string>> endo;
  Clause current;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (first == "c") {
      std::string tag;
      if (ss >> tag && tag == "endo") {
        long var = 0;
        if (!(ss >> var) || var <= 0) {
          throw ParseError(source, number, "bad 'c endo' declaration");
        }
        std::string label;
        std::getline(ss >> std::ws, label);
        while (!label.empty() && (label.back() == '\r' || label.back() == ' ')) {
          label.pop_back();
        }
        endo.emplace_back(static_cast<int>(var), label);
      }
      continue;
    }
    if (first == "p") {
      std::string format;
      if (declared_vars >= 0 || !(ss >> format >> declared_vars >> declared_clauses) ||
          format != "cnf" || declared_vars < 0 || declared_clauses < 0) {
        throw ParseError(source, number, "expected 'p cnf <vars> <clauses>'");
      }
      continue;
    }
    if (declared_vars < 0) {
      throw ParseError(source, number, "clause before 'p cnf' header");
    }
    ss.clear();
    ss.str(line);
    long value = 0;
    std::string token;
    while (ss >> token) {
      std::size_t pos = 0;
      try {
        value = std::stol(token, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != token.size() || token.empty()) {
        throw ParseError(source, number, "bad literal '" + token + "'");
      }
      if (value == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (std::labs(value) > declared_vars) {
        throw ParseError(source, number,
                         "literal " + token + " exceeds declared variables");
      }
      current.push_back(static_cast<Literal>(value));
    }
  }
  if (declared_vars < 0) throw ParseError(source, number, "missing 'p cnf' header");
  if (!current.empty()) {
    throw ParseError(source, number, "last clause is not terminated by 0");
  }
  if (static_cast<long>(cnf.clauses.size()) != declared_clauses) {
    throw ParseError(source, number,
                     "header declares " + std::to_string(declared_clauses) +
                         " clauses, found " +
                         std::to_string(cnf.clauses.size()));
  }
  cnf.vars.Resize(static_cast<int>(declared_vars));
  for (int v = 1; v <= declared_vars; ++v) cnf.vars.SetAuxiliary(v);
  for (auto& [var, label] : endo) {
    if (var > declared_vars) {
      throw ParseError(source, 0,
                       "'c endo' variable " + std::to_string(var) +
                           " exceeds declared variables");
    }
    cnf.vars.SetEndogenous(var, label);
  }
  return cnf;
}

CnfFormula ReadDimacsFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return ParseDimacs(in, path);
}

std::string WriteDimacs(const CnfFormula& cnf) {
  std::ostringstream out;
  for (const auto& [var, label] : cnf.vars.labels()) {
    if (cnf.vars.IsEndogenous(var)) out << "c endo " << var << " " << label << "\n";
  }
  out << "p cnf " << cnf.num_vars() << " " << cnf.clauses.size() << "\n";
  for (const Clause& c : cnf.clauses) {
    for (Literal l : c) out << l << " ";
    out << "0\n";
  }
  return out.str();
}

}  // namespace shapdb
