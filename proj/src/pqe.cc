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

#include "shapdb/pqe.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "shapdb/brute_force.h"
#include "shapdb/errors.h"

namespace shapdb {

void ProbabilityMap::Set(FactId fact, const Rational& p) {
  if (p < 0 || p > 1) {
    throw InputError("probability " + ToString(p) + " of fact " +
                     std::to_string(fact) + " is outside [0,1]");
  }
  entries_[fact] = p;
}

const Rational& ProbabilityMap::Get(FactId fact) const {
  auto it = entries_.find(fact);
  return it == entries_.end() ? one_ : it->second;
}

Rational ParseRational(const std::string& text) {
  if (text.empty()) throw InputError("empty number");
  const std::size_t slash = text.find('/');
  auto is_digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
      return c >= '0' && c <= '9';
    });
  };
  std::string body = text;
  bool negative = false;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    body = body.substr(1);
  }
  Rational out;
  if (slash != std::string::npos) {
    const std::string num = body.substr(0, body.find('/'));
    const std::string den = body.substr(body.find('/') + 1);
    if (!is_digits(num) || !is_digits(den)) {
      throw InputError("bad fraction '" + text + "'");
    }
    if (BigInt(den, 10) == 0) throw InputError("zero denominator in '" + text + "'");
    out = Rational(BigInt(num, 10), BigInt(den, 10));
  } else {
    const std::size_t dot = body.find('.');
    std::string whole = body.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : body.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!is_digits(whole) || (dot != std::string::npos && !is_digits(frac))) {
      throw InputError("bad number '" + text + "'");
    }
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    out = Rational(BigInt(whole + frac, 10), den);
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

ProbabilityMap ParseProbabilities(std::istream& in, const std::string& source) {
  ProbabilityMap out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = line.substr(0, line.find('#'));
    std::istringstream ss(line);
    std::string id_text, p_text, extra;
    if (!(ss >> id_text)) continue;
    if (!(ss >> p_text)) throw ParseError(source, number, "missing probability");
    if (ss >> extra) throw ParseError(source, number, "trailing '" + extra + "'");
    try {
      std::size_t pos = 0;
      const long id = std::stol(id_text, &pos);
      if (pos != id_text.size() || id < 1) throw InputError("bad id");
      out.Set(static_cast<FactId>(id), ParseRational(p_text));
    } catch (const InputError& e) {
      throw ParseError(source, number, e.what());
    } catch (const std::exception&) {
      throw ParseError(source, number, "bad fact id '" + id_text + "'");
    }
  }
  return out;
}

ProbabilityMap ReadProbabilityFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return ParseProbabilities(in, path);
}

Rational ProbDdnnf(const BooleanCircuit& circuit, const ProbabilityMap& pi) {
  if (!circuit.has_output()) throw InputError("circuit has no output gate");
  if (circuit.determinism() == Determinism::kUnknown) {
    throw PreconditionError(
        "circuit determinism is neither checked nor trusted");
  }
  if (!CheckDecomposable(circuit)) {
    throw PreconditionError("circuit is not decomposable");
  }
  std::vector<Rational> p(circuit.output() + 1);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Gate& g = circuit.gates()[i];
    switch (g.kind) {
      case GateKind::kVar:
        p[i] = pi.Get(g.fact);
        break;
      case GateKind::kNot:
        p[i] = 1 - p[g.inputs[0]];
        break;
      case GateKind::kAnd:
        p[i] = 1;
        for (GateId in : g.inputs) p[i] *= p[in];
        break;
      case GateKind::kOr:
        p[i] = 0;
        for (GateId in : g.inputs) p[i] += p[in];
        break;
      case GateKind::kTrue:
        p[i] = 1;
        break;
      case GateKind::kFalse:
        p[i] = 0;
        break;
    }
  }
  return p[circuit.output()];
}

Rational ProbDdnnf(const Ddnnf& ddnnf, DatabasePtr universe,
                   const ProbabilityMap& pi) {
  return ProbDdnnf(ToCircuit(ddnnf, std::move(universe)), pi);
}

std::vector<BigInt> SlicesViaVandermonde(const BooleanCircuit& circuit,
                                         const std::vector<FactId>& players) {
  if (!circuit.has_output()) throw InputError("circuit has no output gate");
  const VarsTable vars = ComputeVars(circuit);
  for (FactId v : vars.Vars(circuit.output())) {
    if (std::find(players.begin(), players.end(), v) == players.end()) {
      throw PreconditionError("circuit depends on fact " + std::to_string(v) +
                              " which is not a player");
    }
  }
  const std::size_t n = players.size();
  // b_j = (1+z_j)^n Pr_j = sum_i z_j^i counts[i] at z_j = j + 1.
  std::vector<Rational> xs(n + 1), coef(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const Rational z = static_cast<unsigned long>(j + 1);
    ProbabilityMap pi;
    for (FactId f : players) pi.Set(f, z / (1 + z));
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), j + 2, n);
    xs[j] = z;
    coef[j] = ProbDdnnf(circuit, pi) * scale;
  }
  // Newton divided differences, then expansion into the monomial basis.
  for (std::size_t level = 1; level <= n; ++level) {
    for (std::size_t j = n; j >= level; --j) {
      coef[j] = (coef[j] - coef[j - 1]) / (xs[j] - xs[j - level]);
    }
  }
  std::vector<Rational> poly(n + 1, Rational(0));
  poly[0] = coef[n];
  for (std::size_t k = n; k-- > 0;) {
    // poly = poly * (z - xs[k]) + coef[k]
    for (std::size_t i = n; i > 0; --i) poly[i] = poly[i - 1] - xs[k] * poly[i];
    poly[0] = -xs[k] * poly[0] + coef[k];
  }
  Binomials binomials(n);
  std::vector<BigInt> counts(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    poly[k].canonicalize();
    if (poly[k].get_den() != 1) {
      throw ConsistencyError("slice count " + std::to_string(k) + " is " +
                             ToString(poly[k]) +
                             "; is the circuit really deterministic and "
                             "decomposable?");
    }
    counts[k] = poly[k].get_num();
    if (counts[k] < 0 || counts[k] > binomials(n, k)) {
      throw ConsistencyError("slice count " + std::to_string(k) +
                             " is out of range");
    }
  }
  return counts;
}

std::vector<BigInt> SlicesViaVandermonde(const BooleanCircuit& circuit) {
  return SlicesViaVandermonde(circuit, circuit.database().Endogenous());
}

namespace {

Rational ShapleyFromSlices(const BooleanCircuit& circuit,
                           const std::vector<FactId>& endogenous, FactId f) {
  std::vector<FactId> others;
  for (FactId g : endogenous) {
    if (g != f) others.push_back(g);
  }
  const std::vector<BigInt> with =
      SlicesViaVandermonde(Substitute(circuit, f, true), others);
  const std::vector<BigInt> without =
      SlicesViaVandermonde(Substitute(circuit, f, false), others);
  const std::size_t n = endogenous.size();
  BigInt total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    total += Factorial(k) * Factorial(n - k - 1) * (with[k] - without[k]);
  }
  Rational out(total, Factorial(n));
  out.canonicalize();
  return out;
}

void CheckCircuit(const BooleanCircuit& circuit) {
  if (!circuit.has_output()) throw InputError("circuit has no output gate");
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::kVar && !circuit.database().IsEndogenous(g.fact)) {
      throw PreconditionError(
          "circuit mentions exogenous fact " + std::to_string(g.fact) +
          "; fix exogenous facts before compiling");
    }
  }
}

}  // namespace

Rational ShapleyViaPqe(const BooleanCircuit& circuit, FactId f) {
  const Database& db = circuit.database();
  if (!db.Contains(f)) throw InputError("unknown fact " + std::to_string(f));
  if (!db.IsEndogenous(f)) {
    throw InputError("fact " + std::to_string(f) + " is exogenous");
  }
  CheckCircuit(circuit);
  return ShapleyFromSlices(circuit, db.Endogenous(), f);
}

ShapleyReport ShapleyViaPqeAll(const BooleanCircuit& circuit) {
  CheckCircuit(circuit);
  const std::vector<FactId> endogenous = circuit.database().Endogenous();
  std::vector<std::pair<FactId, Rational>> values;
  for (FactId f : endogenous) {
    values.emplace_back(f, ShapleyFromSlices(circuit, endogenous, f));
  }
  return MakeExactReport(Method::kExactPqe, circuit.database(), values);
}

Rational BruteForcePqe(const BooleanFunction& fn, const ProbabilityMap& pi) {
  CheckBruteForceSize(fn.variables.size());
  Rational total = 0;
  ForEachSubset(fn.variables, [&](const Assignment& nu, std::size_t) {
    if (!fn(nu)) return;
    Rational weight = 1;
    for (FactId f : fn.variables) {
      weight *= nu.Contains(f) ? pi.Get(f) : Rational(1 - pi.Get(f));
    }
    total += weight;
  });
  return total;
}

}  // namespace shapdb
