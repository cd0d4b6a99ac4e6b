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

#include "shapdb/shapley_exact.h"

#include <string>
#include <utility>

#include "shapdb/errors.h"

namespace shapdb {

namespace {

using Row = std::vector<BigInt>;

// Counts on a normalized circuit, optionally with Var(fact) fixed to
// `value`.
class StratifiedCounter {
 public:
  StratifiedCounter(const BooleanCircuit& circuit, const VarsTable& vars,
                    Binomials& binomials, const Deadline* deadline)
      : circuit_(circuit),
        vars_(vars),
        binomials_(binomials),
        deadline_(deadline) {}

  Row Run(FactId fact, bool value) {
    const std::size_t size = circuit_.output() + 1;
    std::vector<Row> rows(size);
    for (std::size_t i = 0; i < size; ++i) {
      rows[i] = Gate(static_cast<GateId>(i), fact, value, rows);
    }
    return std::move(rows[circuit_.output()]);
  }

  std::vector<Row> RunAll() {
    const std::size_t size = circuit_.output() + 1;
    std::vector<Row> rows(size);
    for (std::size_t i = 0; i < size; ++i) {
      rows[i] = Gate(static_cast<GateId>(i), 0, false, rows);
    }
    return rows;
  }

 private:
  std::size_t Width(GateId g, FactId fact) const {
    const auto& bits = vars_.bits(g);
    std::size_t count = bits.count();
    if (fact != 0 && fact < bits.size() && bits[fact]) --count;
    return count;
  }

  Row Gate(GateId id, FactId fact, bool value, const std::vector<Row>& rows) {
    if (deadline_ != nullptr) deadline_->Poll("stratified counting");
    const shapdb::Gate& g = circuit_.gate(id);
    switch (g.kind) {
      case GateKind::kVar:
        if (fact != 0 && g.fact == fact) return Row{BigInt(value ? 1 : 0)};
        return Row{BigInt(0), BigInt(1)};
      case GateKind::kTrue:
        return Row{BigInt(1)};
      case GateKind::kFalse:
        return Row{BigInt(0)};
      case GateKind::kNot: {
        const Row& in = rows[g.inputs[0]];
        const std::size_t n = in.size() - 1;
        Row out(n + 1);
        for (std::size_t l = 0; l <= n; ++l) out[l] = binomials_(n, l) - in[l];
        return out;
      }
      case GateKind::kAnd: {
        if (g.inputs.empty()) return Row{BigInt(1)};
        const Row& a = rows[g.inputs[0]];
        const Row& b = rows[g.inputs[1]];
        Row out(a.size() + b.size() - 1);
        for (auto& x : out) x = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (a[i] == 0) continue;
          for (std::size_t j = 0; j < b.size(); ++j) {
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(),
                       b[j].get_mpz_t());
          }
        }
        return out;
      }
      case GateKind::kOr: {
        if (g.inputs.empty()) return Row{BigInt(0)};
        const std::size_t n = Width(id, fact);
        Row out(n + 1);
        for (auto& x : out) x = 0;
        for (GateId in : g.inputs) {
          const Row& a = rows[in];
          const std::size_t side = n - (a.size() - 1);
          for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j <= side; ++j) {
              mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(),
                         binomials_(side, j).get_mpz_t());
            }
          }
        }
        return out;
      }
    }
    throw PreconditionError("unknown gate kind");
  }

  const BooleanCircuit& circuit_;
  const VarsTable& vars_;
  Binomials& binomials_;
  const Deadline* deadline_;
};

// Completed, normalized circuit with its vars, ready for per-fact counting.
struct Prepared {
  BooleanCircuit circuit;
  VarsTable vars;
  std::vector<FactId> endogenous;
};

Prepared Prepare(const BooleanCircuit& circuit) {
  if (!circuit.has_output()) throw InputError("circuit has no output gate");
  for (const shapdb::Gate& g : circuit.gates()) {
    if (g.kind == GateKind::kVar && !circuit.database().IsEndogenous(g.fact)) {
      throw PreconditionError(
          "circuit mentions exogenous fact " + std::to_string(g.fact) +
          "; fix exogenous facts before compiling");
    }
  }
  const std::vector<FactId> endogenous = circuit.database().Endogenous();
  BooleanCircuit completed =
      NormalizeFanin2(CompleteVars(circuit, endogenous));
  CheckStratifiedPreconditions(completed);
  VarsTable vars = ComputeVars(completed);
  return Prepared{std::move(completed), std::move(vars), endogenous};
}

// Sum over k of k!(n-k-1)!/n! (with[k] - without[k]).
Rational Combine(const Row& with, const Row& without, std::size_t n) {
  BigInt total = 0;
  for (std::size_t k = 0; k + 1 <= n; ++k) {
    const BigInt diff = (k < with.size() ? with[k] : BigInt(0)) -
                        (k < without.size() ? without[k] : BigInt(0));
    if (diff == 0) continue;
    total += Factorial(k) * Factorial(n - k - 1) * diff;
  }
  Rational out(total, Factorial(n));
  out.canonicalize();
  return out;
}

// out += a * b, growing out as needed.
void AddProduct(Row* out, const Row& a, const Row& b) {
  if (a.empty() || b.empty()) return;
  if (out->size() < a.size() + b.size() - 1) {
    out->resize(a.size() + b.size() - 1, BigInt(0));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul((*out)[i + j].get_mpz_t(), a[i].get_mpz_t(),
                 b[j].get_mpz_t());
    }
  }
}

Row Smoothing(std::size_t s, Binomials& binomials) {
  Row out(s + 1);
  for (std::size_t j = 0; j <= s; ++j) out[j] = binomials(s, j);
  return out;
}

// Rows of sum_k ssat_k(C[f -> 1]) z^k for every fact f at once. Reading a
// count row as a polynomial, marking f by y makes every gate polynomial
// linear in y; the f -> 1 counts are its y-coefficient, which one reverse
// pass of adjoints d(root)/d(gate) yields for all facts together.
std::vector<Row> FixedOneRows(const Prepared& p, const std::vector<Row>& rows,
                              Binomials& binomials, const Deadline* deadline) {
  const BooleanCircuit& c = p.circuit;
  std::vector<Row> adjoint(c.output() + 1);
  adjoint[c.output()] = Row{BigInt(1)};
  std::vector<Row> out(c.database().MaxId() + 1);
  auto for_missing = [&](GateId g, GateId in, const Row& term) {
    const auto& outer = p.vars.bits(g);
    const auto& inner = p.vars.bits(in);
    for (std::size_t f = outer.find_first(); f != outer.npos;
         f = outer.find_next(f)) {
      if (f < inner.size() && inner[f]) continue;
      AddProduct(&out[f], term, Row{BigInt(1)});
    }
  };
  for (std::size_t i = c.output() + 1; i-- > 0;) {
    const GateId id = static_cast<GateId>(i);
    const Row& adj = adjoint[id];
    if (adj.empty()) continue;  // not below the output
    if (deadline != nullptr) deadline->Poll("stratified counting");
    const Gate& g = c.gate(id);
    switch (g.kind) {
      case GateKind::kVar:
        AddProduct(&out[g.fact], adj, Row{BigInt(1)});
        break;
      case GateKind::kTrue:
      case GateKind::kFalse:
        break;
      case GateKind::kNot: {
        // (1+z)^|vars| (1+y) - P_in
        AddProduct(&adjoint[g.inputs[0]], adj, Row{BigInt(-1)});
        if (p.vars.Count(id) == 0) break;
        Row term;
        AddProduct(&term, adj,
                   Smoothing(p.vars.Count(id) - 1, binomials));
        const auto& bits = p.vars.bits(id);
        for (std::size_t f = bits.find_first(); f != bits.npos;
             f = bits.find_next(f)) {
          AddProduct(&out[f], term, Row{BigInt(1)});
        }
        break;
      }
      case GateKind::kAnd:
        if (g.inputs.empty()) break;
        AddProduct(&adjoint[g.inputs[0]], adj, rows[g.inputs[1]]);
        AddProduct(&adjoint[g.inputs[1]], adj, rows[g.inputs[0]]);
        break;
      case GateKind::kOr:
        for (GateId in : g.inputs) {
          const std::size_t side = p.vars.Count(id) - p.vars.Count(in);
          AddProduct(&adjoint[in], adj, Smoothing(side, binomials));
          if (side == 0) continue;
          // Each missing fact contributes P_in (1+z)^(side-1) (1+y).
          Row partial, term;
          AddProduct(&partial, adj, rows[in]);
          AddProduct(&term, partial, Smoothing(side - 1, binomials));
          for_missing(id, in, term);
        }
        break;
    }
    if (id != c.output()) adjoint[id] = Row();
  }
  return out;
}

void CheckFact(const Database& db, FactId f) {
  if (!db.Contains(f)) throw InputError("unknown fact " + std::to_string(f));
  if (!db.IsEndogenous(f)) {
    throw InputError("fact " + std::to_string(f) + " is exogenous");
  }
}

}  // namespace

void CheckStratifiedPreconditions(const BooleanCircuit& circuit) {
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const shapdb::Gate& g = circuit.gates()[i];
    if ((g.kind == GateKind::kAnd || g.kind == GateKind::kOr) &&
        g.inputs.size() != 0 && g.inputs.size() != 2) {
      throw PreconditionError("gate " + std::to_string(i) +
                              " has fan-in " + std::to_string(g.inputs.size()) +
                              "; normalize to fan-in 0 or 2 first");
    }
  }
  if (circuit.determinism() == Determinism::kUnknown) {
    throw PreconditionError(
        "circuit determinism is neither checked nor trusted");
  }
  if (!CheckDecomposable(circuit)) {
    throw PreconditionError("circuit is not decomposable");
  }
}

SatKTable ComputeAllSatK(const BooleanCircuit& circuit,
                         const Deadline* deadline) {
  if (!circuit.has_output()) throw InputError("circuit has no output gate");
  CheckStratifiedPreconditions(circuit);
  const VarsTable vars = ComputeVars(circuit);
  Binomials binomials(circuit.database().MaxId() + 1);
  StratifiedCounter counter(circuit, vars, binomials, deadline);
  return SatKTable(counter.RunAll());
}

Rational ShapleyDdnnf(const BooleanCircuit& circuit, FactId f,
                      const Deadline* deadline) {
  CheckFact(circuit.database(), f);
  const Prepared p = Prepare(circuit);
  Binomials binomials(p.endogenous.size() + 1);
  StratifiedCounter counter(p.circuit, p.vars, binomials, deadline);
  const Row with = counter.Run(f, true);
  const Row without = counter.Run(f, false);
  return Combine(with, without, p.endogenous.size());
}

Rational ShapleyDdnnf(const Ddnnf& ddnnf, DatabasePtr universe, FactId f) {
  return ShapleyDdnnf(ToCircuit(ddnnf, std::move(universe)), f);
}

ShapleyReport ShapleyAll(const BooleanCircuit& circuit,
                         const Deadline* deadline) {
  const Prepared p = Prepare(circuit);
  const std::size_t n = p.endogenous.size();
  std::vector<std::pair<FactId, Rational>> values;
  if (n > 0) {
    Binomials binomials(n + 1);
    StratifiedCounter counter(p.circuit, p.vars, binomials, deadline);
    const std::vector<Row> rows = counter.RunAll();
    const Row& root = rows[p.circuit.output()];
    const std::vector<Row> with = FixedOneRows(p, rows, binomials, deadline);
    Rational sum = 0;
    for (FactId f : p.endogenous) {
      // P = A + z B, with B the counts for f -> 1 and A those for f -> 0.
      const Row& b = with[f];
      Row a(n);
      for (std::size_t k = 0; k < n; ++k) {
        a[k] = root[k] - (k > 0 && k - 1 < b.size() ? b[k - 1] : BigInt(0));
      }
      values.emplace_back(f, Combine(b, a, n));
      sum += values.back().second;
    }
    const Rational expected = Rational(root.back() - root.front());
    if (sum != expected) {
      throw ConsistencyError("Shapley values sum to " + ToString(sum) +
                             ", expected " + ToString(expected));
    }
  }
  return MakeExactReport(Method::kExactDdnnf, circuit.database(), values);
}

ShapleyReport ShapleyAll(const Ddnnf& ddnnf, DatabasePtr universe,
                         const Deadline* deadline) {
  return ShapleyAll(ToCircuit(ddnnf, std::move(universe)), deadline);
}

}  // namespace shapdb
