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

#include "shapdb/circuit.h"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "shapdb/errors.h"

namespace shapdb {

std::string GateKindName(GateKind kind) {
  switch (kind) {
    case GateKind::kVar: return "var";
    case GateKind::kNot: return "not";
    case GateKind::kAnd: return "and";
    case GateKind::kOr: return "or";
    case GateKind::kTrue: return "true";
    case GateKind::kFalse: return "false";
  }
  return "?";
}

std::string DeterminismName(Determinism d) {
  switch (d) {
    case Determinism::kUnknown: return "unknown";
    case Determinism::kChecked: return "checked";
    case Determinism::kTrusted: return "trusted";
  }
  return "?";
}

BooleanCircuit::BooleanCircuit(DatabasePtr universe)
    : universe_(std::move(universe)) {
  if (!universe_) throw InputError("circuit needs a database");
}

GateId BooleanCircuit::AddGate(Gate gate) {
  const auto id = static_cast<GateId>(gates_.size());
  switch (gate.kind) {
    case GateKind::kVar:
      if (!universe_->Contains(gate.fact)) {
        throw InputError("var gate references unknown fact " +
                         std::to_string(gate.fact));
      }
      gate.inputs.clear();
      break;
    case GateKind::kNot:
      if (gate.inputs.size() != 1) {
        throw InputError("not-gate needs exactly one input");
      }
      break;
    case GateKind::kTrue:
    case GateKind::kFalse:
      if (!gate.inputs.empty()) {
        throw InputError("constant gate cannot have inputs");
      }
      break;
    case GateKind::kAnd:
    case GateKind::kOr:
      break;
  }
  for (GateId in : gate.inputs) {
    if (in >= id) {
      throw InputError("gate " + std::to_string(id) + " uses input " +
                       std::to_string(in) + " that is not an earlier gate");
    }
  }
  gates_.push_back(std::move(gate));
  return id;
}

GateId BooleanCircuit::AddVar(FactId fact) {
  return AddGate(Gate{GateKind::kVar, {}, fact});
}
GateId BooleanCircuit::AddNot(GateId input) {
  return AddGate(Gate{GateKind::kNot, {input}, 0});
}
GateId BooleanCircuit::AddAnd(std::vector<GateId> inputs) {
  return AddGate(Gate{GateKind::kAnd, std::move(inputs), 0});
}
GateId BooleanCircuit::AddOr(std::vector<GateId> inputs) {
  return AddGate(Gate{GateKind::kOr, std::move(inputs), 0});
}
GateId BooleanCircuit::AddTrue() { return AddGate(Gate{GateKind::kTrue, {}, 0}); }
GateId BooleanCircuit::AddFalse() {
  return AddGate(Gate{GateKind::kFalse, {}, 0});
}

void BooleanCircuit::SetOutput(GateId output) {
  if (output >= gates_.size()) {
    throw InputError("output gate " + std::to_string(output) +
                     " does not exist");
  }
  output_ = output;
  has_output_ = true;
}

std::vector<FactId> VarsTable::Vars(GateId g) const {
  std::vector<FactId> out;
  const auto& bits = sets_.at(g);
  for (auto i = bits.find_first(); i != boost::dynamic_bitset<>::npos;
       i = bits.find_next(i)) {
    out.push_back(static_cast<FactId>(i));
  }
  return out;
}

VarsTable ComputeVars(const BooleanCircuit& circuit) {
  const std::size_t width = circuit.database().MaxId() + 1;
  std::vector<boost::dynamic_bitset<>> sets;
  sets.reserve(circuit.size());
  for (const Gate& g : circuit.gates()) {
    boost::dynamic_bitset<> bits(width);
    if (g.kind == GateKind::kVar) {
      bits.set(g.fact);
    } else {
      for (GateId in : g.inputs) bits |= sets[in];
    }
    sets.push_back(std::move(bits));
  }
  return VarsTable(std::move(sets));
}

namespace {

char EvalGate(const Gate& g, const std::vector<char>& values, bool var_value) {
  switch (g.kind) {
    case GateKind::kVar: return var_value;
    case GateKind::kNot: return !values[g.inputs[0]];
    case GateKind::kAnd:
      for (GateId in : g.inputs) {
        if (!values[in]) return 0;
      }
      return 1;
    case GateKind::kOr:
      for (GateId in : g.inputs) {
        if (values[in]) return 1;
      }
      return 0;
    case GateKind::kTrue: return 1;
    case GateKind::kFalse: return 0;
  }
  return 0;
}

std::vector<char> EvaluateImpl(const BooleanCircuit& circuit,
                               const Assignment& nu, bool exogenous_true) {
  std::vector<char> values(circuit.size(), 0);
  const Database& db = circuit.database();
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Gate& g = circuit.gates()[i];
    bool var_value = false;
    if (g.kind == GateKind::kVar) {
      var_value = nu.Contains(g.fact) ||
                  (exogenous_true && !db.IsEndogenous(g.fact));
    }
    values[i] = EvalGate(g, values, var_value);
  }
  return values;
}

}  // namespace

std::vector<char> EvaluateGates(const BooleanCircuit& circuit,
                                const Assignment& nu) {
  return EvaluateImpl(circuit, nu, /*exogenous_true=*/false);
}

bool Evaluate(const BooleanCircuit& circuit, const Assignment& nu) {
  if (!circuit.has_output()) throw InputError("circuit has no output gate");
  return EvaluateGates(circuit, nu)[circuit.output()] != 0;
}

BooleanFunction AsFunction(const BooleanCircuit& circuit) {
  if (!circuit.has_output()) throw InputError("circuit has no output gate");
  auto shared = std::make_shared<BooleanCircuit>(circuit);
  return BooleanFunction{
      circuit.database().Endogenous(), [shared](const Assignment& nu) {
        return EvaluateImpl(*shared, nu, /*exogenous_true=*/true)
                   [shared->output()] != 0;
      }};
}

bool CheckDecomposable(const BooleanCircuit& circuit) {
  const VarsTable vars = ComputeVars(circuit);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Gate& g = circuit.gates()[i];
    if (g.kind != GateKind::kAnd || g.inputs.size() < 2) continue;
    boost::dynamic_bitset<> seen(vars.bits(static_cast<GateId>(i)).size());
    for (GateId in : g.inputs) {
      if (seen.intersects(vars.bits(in))) return false;
      seen |= vars.bits(in);
    }
  }
  return true;
}

DeterminismVerdict CheckDeterministic(const BooleanCircuit& circuit,
                                      DeterminismMode mode) {
  if (mode == DeterminismMode::kTrusted) return DeterminismVerdict::kTrusted;
  const VarsTable vars = ComputeVars(circuit);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Gate& g = circuit.gates()[i];
    if (g.kind != GateKind::kOr || g.inputs.size() < 2) continue;
    const auto id = static_cast<GateId>(i);
    const std::vector<FactId> gate_vars = vars.Vars(id);
    if (gate_vars.size() > kDeterminismCheckLimit) {
      throw TooLargeError("exhaustive determinism check refused: gate " +
                          std::to_string(id) + " depends on " +
                          std::to_string(gate_vars.size()) + " variables");
    }
    // Gates feeding g, in topological order.
    std::vector<char> in_cone(i + 1, 0);
    in_cone[i] = 1;
    for (std::size_t j = i + 1; j-- > 0;) {
      if (!in_cone[j]) continue;
      for (GateId in : circuit.gates()[j].inputs) in_cone[in] = 1;
    }
    std::vector<GateId> cone;
    for (std::size_t j = 0; j <= i; ++j) {
      if (in_cone[j]) cone.push_back(static_cast<GateId>(j));
    }
    std::vector<char> values(i + 1, 0);
    Assignment nu;
    const std::uint64_t total = std::uint64_t{1} << gate_vars.size();
    for (std::uint64_t step = 0; step < total; ++step) {
      if (step > 0) {
        const FactId flip = gate_vars[std::countr_zero(step)];
        nu.Set(flip, !nu.Contains(flip));
      }
      for (GateId c : cone) {
        const Gate& cg = circuit.gates()[c];
        values[c] = EvalGate(cg, values,
                             cg.kind == GateKind::kVar && nu.Contains(cg.fact));
      }
      int satisfied = 0;
      for (GateId in : g.inputs) satisfied += values[in] ? 1 : 0;
      if (satisfied > 1) return DeterminismVerdict::kNotDeterministic;
    }
  }
  return DeterminismVerdict::kDeterministic;
}

BooleanCircuit NormalizeFanin2(const BooleanCircuit& circuit) {
  BooleanCircuit out(circuit.database_ptr());
  out.set_determinism(circuit.determinism());
  std::vector<GateId> remap(circuit.size());
  GateId true_gate = 0, false_gate = 0;
  bool have_true = false, have_false = false;
  auto constant = [&](bool value) {
    if (value) {
      if (!have_true) true_gate = out.AddTrue(), have_true = true;
      return true_gate;
    }
    if (!have_false) false_gate = out.AddFalse(), have_false = true;
    return false_gate;
  };
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Gate& g = circuit.gates()[i];
    if (g.kind != GateKind::kAnd && g.kind != GateKind::kOr) {
      Gate copy = g;
      for (GateId& in : copy.inputs) in = remap[in];
      remap[i] = out.AddGate(std::move(copy));
      continue;
    }
    const bool is_and = g.kind == GateKind::kAnd;
    std::vector<GateId> inputs;
    for (GateId in : g.inputs) inputs.push_back(remap[in]);
    if (inputs.empty()) {
      remap[i] = out.AddGate(Gate{g.kind, {}, 0});
    } else if (inputs.size() == 1) {
      const GateId neutral = constant(is_and);
      remap[i] = out.AddGate(Gate{g.kind, {inputs[0], neutral}, 0});
    } else {
      GateId acc = out.AddGate(Gate{g.kind, {inputs[0], inputs[1]}, 0});
      for (std::size_t k = 2; k < inputs.size(); ++k) {
        acc = out.AddGate(Gate{g.kind, {acc, inputs[k]}, 0});
      }
      remap[i] = acc;
    }
  }
  if (circuit.has_output()) out.SetOutput(remap[circuit.output()]);
  return out;
}

BooleanCircuit Substitute(const BooleanCircuit& circuit, FactId fact,
                          bool value) {
  BooleanCircuit out(circuit.database_ptr());
  out.set_determinism(circuit.determinism());
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::kVar && g.fact == fact) {
      out.AddGate(Gate{value ? GateKind::kTrue : GateKind::kFalse, {}, 0});
    } else {
      out.AddGate(g);
    }
  }
  if (circuit.has_output()) out.SetOutput(circuit.output());
  return out;
}

BooleanCircuit CompleteVars(const BooleanCircuit& circuit,
                            const std::vector<FactId>& endogenous) {
  if (!circuit.has_output()) throw InputError("circuit has no output gate");
  const VarsTable vars = ComputeVars(circuit);
  const auto& present = vars.bits(circuit.output());
  std::vector<FactId> missing;
  for (FactId f : endogenous) {
    if (f >= present.size() || !present[f]) missing.push_back(f);
  }
  BooleanCircuit out = circuit;
  if (missing.empty()) return out;
  std::vector<GateId> conjuncts{circuit.output()};
  for (FactId f : missing) {
    const GateId var = out.AddVar(f);
    const GateId neg = out.AddNot(var);
    conjuncts.push_back(out.AddOr({var, neg}));
  }
  out.SetOutput(out.AddAnd(std::move(conjuncts)));
  return out;
}

BooleanCircuit CircuitFromDnf(const DnfLineage& lineage) {
  BooleanCircuit out(lineage.database_ptr());
  const auto& monomials = lineage.monomials();
  auto add_monomial = [&](const DnfLineage::Monomial& m, bool force_and) {
    if (m.size() == 1 && !force_and) return out.AddVar(m[0]);
    std::vector<GateId> vars;
    for (FactId id : m) vars.push_back(out.AddVar(id));
    return out.AddAnd(std::move(vars));
  };
  if (monomials.empty()) {
    out.SetOutput(out.AddFalse());
  } else if (monomials.size() == 1) {
    out.SetOutput(add_monomial(monomials[0], /*force_and=*/false));
  } else {
    std::vector<GateId> terms;
    for (const auto& m : monomials) {
      terms.push_back(add_monomial(m, /*force_and=*/true));
    }
    out.SetOutput(out.AddOr(std::move(terms)));
  }
  return out;
}

BooleanCircuit FixExogenousCircuit(const BooleanCircuit& circuit) {
  BooleanCircuit out(circuit.database_ptr());
  out.set_determinism(circuit.determinism());
  const Database& db = circuit.database();
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::kVar && !db.IsEndogenous(g.fact)) {
      out.AddGate(Gate{GateKind::kTrue, {}, 0});
    } else {
      out.AddGate(g);
    }
  }
  if (circuit.has_output()) out.SetOutput(circuit.output());
  return out;
}

namespace {

using nlohmann::json;

GateKind ParseGateKind(const std::string& text, const std::string& source) {
  if (text == "var") return GateKind::kVar;
  if (text == "not") return GateKind::kNot;
  if (text == "and") return GateKind::kAnd;
  if (text == "or") return GateKind::kOr;
  if (text == "true") return GateKind::kTrue;
  if (text == "false") return GateKind::kFalse;
  throw ParseError(source, 0, "unknown gate kind '" + text + "'");
}

}  // namespace

BooleanCircuit ParseCircuitJson(const std::string& text,
                                const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 0, std::string("invalid JSON: ") + e.what());
  }
  try {
    std::vector<Fact> facts;
    for (const json& f : doc.at("facts")) {
      Fact fact;
      fact.id = f.at("id").get<FactId>();
      fact.kind = ParseKind(f.at("kind").get<std::string>(), source, 0);
      fact.label = f.value("label", "f" + std::to_string(fact.id));
      facts.push_back(std::move(fact));
    }
    BooleanCircuit circuit(std::make_shared<Database>(std::move(facts)));
    const json& gates = doc.at("gates");
    for (std::size_t i = 0; i < gates.size(); ++i) {
      const json& g = gates[i];
      if (g.at("id").get<std::size_t>() != i) {
        throw ParseError(source, 0,
                         "gate ids must be 0..n-1 in order; got " +
                             g.at("id").dump() + " at position " +
                             std::to_string(i));
      }
      Gate gate;
      gate.kind = ParseGateKind(g.at("kind").get<std::string>(), source);
      if (g.contains("inputs")) {
        gate.inputs = g.at("inputs").get<std::vector<GateId>>();
      }
      if (gate.kind == GateKind::kVar) gate.fact = g.at("fact").get<FactId>();
      circuit.AddGate(std::move(gate));
    }
    circuit.SetOutput(doc.at("output").get<GateId>());
    if (doc.contains("determinism")) {
      const std::string d = doc.at("determinism").get<std::string>();
      if (d == "trusted") circuit.set_determinism(Determinism::kTrusted);
      if (d == "checked") circuit.set_determinism(Determinism::kChecked);
    }
    return circuit;
  } catch (const json::exception& e) {
    throw ParseError(source, 0, std::string("bad circuit document: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(source, 0, e.what());
  }
}

BooleanCircuit ReadCircuitFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseCircuitJson(buffer.str(), path);
}

std::string WriteCircuitJson(const BooleanCircuit& circuit) {
  json doc;
  doc["facts"] = json::array();
  for (const Fact& f : circuit.database().facts()) {
    doc["facts"].push_back(
        {{"id", f.id}, {"kind", KindName(f.kind)}, {"label", f.label}});
  }
  doc["gates"] = json::array();
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Gate& g = circuit.gates()[i];
    json entry = {{"id", i}, {"kind", GateKindName(g.kind)},
                  {"inputs", g.inputs}};
    if (g.kind == GateKind::kVar) entry["fact"] = g.fact;
    doc["gates"].push_back(std::move(entry));
  }
  doc["output"] = circuit.output();
  if (circuit.determinism() != Determinism::kUnknown) {
    doc["determinism"] = DeterminismName(circuit.determinism());
  }
  return doc.dump(2) + "\n";
}

}  // namespace shapdb
