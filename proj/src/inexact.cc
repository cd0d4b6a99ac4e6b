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

#include "shapdb/inexact.h"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>
#include <map>

#include <Eigen/Dense>

#include "shapdb/errors.h"
#include "shapdb/random.h"

namespace shapdb {

namespace {

// m C(m-1, k), or 0 when it does not fit in a long.
long TermDenominator(std::size_t m, std::size_t k) {
  unsigned __int128 c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * (m - k - 1 + i) / i;
    if (c > LONG_MAX) return 0;
  }
  c *= m;
  return c > LONG_MAX ? 0 : static_cast<long>(c);
}

// Same sums in 64-bit integers over a common denominator. Returns false on
// overflow, leaving `out` untouched.
bool CnfProxySmall(const CnfFormula& cnf, bool trace, ProxyScore* out) {
  const std::size_t n = cnf.clauses.size();
  std::vector<std::pair<long, long>> dens(n, {0, 0});
  long lcm = 1;
  long total_literals = 0;
  auto join = [&lcm](long d) {
    if (d == 0) return false;
    const long g = std::gcd(lcm, d);
    return !__builtin_mul_overflow(lcm / g, d, &lcm);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Clause& clause = cnf.clauses[i];
    const std::size_t m = clause.size();
    total_literals += static_cast<long>(m);
    std::size_t pos = 0;
    for (Literal l : clause) pos += l > 0;
    if (pos > 0) {
      dens[i].first = TermDenominator(m, m - pos);
      if (!join(dens[i].first)) return false;
    }
    if (pos < m) {
      dens[i].second = TermDenominator(m, pos);
      if (!join(dens[i].second)) return false;
    }
  }
  long bound = 0;
  if (__builtin_mul_overflow(lcm, total_literals + 1, &bound)) return false;
  unsigned long denominator = 0;
  if (__builtin_mul_overflow(static_cast<unsigned long>(lcm),
                             static_cast<unsigned long>(n), &denominator)) {
    return false;
  }

  std::vector<long> sums(cnf.num_vars() + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const long up = dens[i].first ? lcm / dens[i].first : 0;
    const long down = dens[i].second ? lcm / dens[i].second : 0;
    for (Literal l : cnf.clauses[i]) {
      const int v = VarOf(l);
      if (!cnf.vars.IsEndogenous(v)) continue;
      const long w = l > 0 ? up : -down;
      sums[v] += w;
      if (trace) {
        Rational delta;
        mpq_set_si(delta.get_mpq_t(), w, denominator);
        delta.canonicalize();
        out->trace.push_back(ProxyContribution{i, v, std::move(delta)});
      }
    }
  }
  out->num_clauses = n;
  const std::vector<int> endogenous = cnf.vars.EndogenousVars();
  out->values.reserve(endogenous.size());
  for (int v : endogenous) {
    Rational value;
    mpq_set_si(value.get_mpq_t(), sums[v], denominator);
    value.canonicalize();
    out->values.emplace_back(v, std::move(value));
  }
  return true;
}

}  // namespace

ProxyScore CnfProxy(const CnfFormula& cnf, bool trace) {
  const long repeated = FindRepeatedVariableClause(cnf);
  if (repeated >= 0) {
    throw InputError("clause " + std::to_string(repeated) +
                     " mentions a variable more than once");
  }
  ProxyScore out;
  if (cnf.clauses.empty()) {
    for (int v : cnf.vars.EndogenousVars()) out.values.emplace_back(v, 0);
    return out;
  }
  if (CnfProxySmall(cnf, trace, &out)) return out;
  const std::size_t n = cnf.clauses.size();
  out.num_clauses = n;
  std::size_t widest = 0;
  for (const Clause& c : cnf.clauses) widest = std::max(widest, c.size());
  Binomials binomials(widest);

  // Term 1/(m C(m-1, k)) for a literal of a clause of m literals, k being
  // the number of literals of the other sign. All values share the
  // denominator n * lcm of the terms used.
  std::vector<std::vector<char>> used(widest + 1);
  for (std::size_t m = 1; m <= widest; ++m) used[m].assign(m, 0);
  for (const Clause& clause : cnf.clauses) {
    std::size_t pos = 0;
    for (Literal l : clause) pos += l > 0;
    const std::size_t m = clause.size();
    if (m == 0) continue;
    if (pos > 0) used[m][m - pos] = 1;
    if (pos < m) used[m][pos] = 1;
  }
  BigInt lcm = 1;
  for (std::size_t m = 1; m <= widest; ++m) {
    for (std::size_t k = 0; k < m; ++k) {
      if (used[m][k]) {
        const BigInt den = BigInt(static_cast<unsigned long>(m)) *
                           binomials(m - 1, k);
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      }
    }
  }
  // share[m][k] = lcm / (m C(m-1, k)), the integer weight of one literal.
  std::vector<std::vector<BigInt>> share(widest + 1);
  for (std::size_t m = 1; m <= widest; ++m) {
    share[m].resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      if (used[m][k]) {
        share[m][k] = lcm / (BigInt(static_cast<unsigned long>(m)) *
                             binomials(m - 1, k));
      }
    }
  }
  const BigInt denominator = lcm * static_cast<unsigned long>(n);

  std::vector<BigInt> sums(cnf.num_vars() + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Clause& clause = cnf.clauses[i];
    const std::size_t m = clause.size();
    std::size_t pos = 0;
    for (Literal l : clause) pos += l > 0;
    for (Literal l : clause) {
      const int v = VarOf(l);
      if (!cnf.vars.IsEndogenous(v)) continue;
      const BigInt& w = share[m][l > 0 ? m - pos : pos];
      if (l > 0) {
        sums[v] += w;
      } else {
        sums[v] -= w;
      }
      if (trace) {
        Rational delta(l > 0 ? BigInt(w) : BigInt(-w), denominator);
        delta.canonicalize();
        out.trace.push_back(ProxyContribution{i, v, std::move(delta)});
      }
    }
  }
  for (int v : cnf.vars.EndogenousVars()) {
    Rational value(sums[v], denominator);
    value.canonicalize();
    out.values.emplace_back(v, std::move(value));
  }
  return out;
}

ShapleyReport CnfProxyReport(const CnfFormula& cnf) {
  const ProxyScore score = CnfProxy(cnf);
  std::vector<std::pair<FactId, Rational>> values;
  for (const auto& [v, value] : score.values) {
    values.emplace_back(static_cast<FactId>(v), value);
  }
  ShapleyReport report =
      MakeExactReport(Method::kProxy, *cnf.vars.ToDatabase(), values);
  report.comparable = false;
  return report;
}

namespace {

void CheckPlayers(const BooleanFunction& fn, const Database& db) {
  for (FactId f : fn.variables) {
    if (!db.Contains(f)) throw InputError("unknown fact " + std::to_string(f));
  }
}

}  // namespace

ShapleyReport MonteCarlo(const BooleanFunction& fn, const Database& db,
                         const SampleBudget& budget) {
  CheckPlayers(fn, db);
  if (budget.samples_per_fact < 1) {
    throw InputError("samples per fact must be at least 1");
  }
  const std::size_t n = fn.variables.size();
  const std::size_t r = budget.samples_per_fact;
  Rng rng(budget.seed);
  std::vector<long> gains(n, 0);
  std::vector<std::size_t> order(n);
  for (std::size_t s = 0; s < r; ++s) {
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.Shuffle(order);
    Assignment prefix;
    int previous = fn(prefix) ? 1 : 0;
    for (std::size_t i : order) {
      prefix.Insert(fn.variables[i]);
      const int current = fn(prefix) ? 1 : 0;
      gains[i] += current - previous;
      previous = current;
    }
  }
  std::vector<std::pair<FactId, Rational>> values;
  for (std::size_t i = 0; i < n; ++i) {
    Rational v(gains[i], static_cast<long>(r));
    v.canonicalize();
    values.emplace_back(fn.variables[i], v);
  }
  return MakeExactReport(Method::kMonteCarlo, db, values);
}

ShapleyReport KernelShap(const BooleanFunction& fn, const Database& db,
                         const SampleBudget& budget) {
  CheckPlayers(fn, db);
  const std::size_t n = fn.variables.size();
  if (n < 2) throw InputError("KernelSHAP needs at least two facts");
  if (budget.samples_per_fact < 1) {
    throw InputError("samples per fact must be at least 1");
  }
  const std::size_t m = budget.samples_per_fact * n;

  Assignment all;
  for (FactId f : fn.variables) all.Insert(f);
  const double v0 = fn(Assignment()) ? 1.0 : 0.0;
  const double v1 = fn(all) ? 1.0 : 0.0;

  // Coalitions as membership vectors with their regression weights. Sizes
  // s and n-s are paired. Working inward from s = 1, a size is enumerated
  // completely (with its complements) while the remaining budget covers its
  // share of the kernel mass; the other sizes are sampled, each draw adding
  // the coalition and its complement.
  std::vector<std::vector<char>> coalitions;
  std::vector<double> weights;
  const std::size_t num_sizes = n / 2;  // s = 1..num_sizes, s <= n-s
  std::vector<double> mass(num_sizes + 1, 0);
  double mass_total = 0;
  for (std::size_t s = 1; s <= num_sizes; ++s) {
    mass[s] = (n - 1.0) / (static_cast<double>(s) * (n - s));
    if (s != n - s) mass[s] *= 2;
    mass_total += mass[s];
  }
  for (std::size_t s = 1; s <= num_sizes; ++s) mass[s] /= mass_total;

  auto add = [&](std::vector<char> z, double w) {
    coalitions.push_back(std::move(z));
    weights.push_back(w);
  };
  auto add_pair = [&](const std::vector<char>& z, double w, bool paired) {
    add(z, w);
    if (paired) {
      std::vector<char> c(n);
      for (std::size_t j = 0; j < n; ++j) c[j] = !z[j];
      add(std::move(c), w);
    }
  };

  double remaining = static_cast<double>(m);
  double mass_left = 1.0;
  std::size_t first_sampled = 1;
  for (; first_sampled <= num_sizes; ++first_sampled) {
    const std::size_t s = first_sampled;
    const bool paired = s != n - s;
    const double log_choose = std::lgamma(n + 1.0) - std::lgamma(s + 1.0) -
                              std::lgamma(n - s + 1.0);
    const double count = std::exp(log_choose) * (paired ? 2 : 1);
    if (mass_left <= 0 || remaining * mass[s] / mass_left < count - 1e-8) break;
    const double w = mass[s] / count;
    // Enumerate the size-s subsets in lexicographic order.
    std::vector<std::size_t> idx(s);
    for (std::size_t j = 0; j < s; ++j) idx[j] = j;
    while (true) {
      std::vector<char> z(n, 0);
      for (std::size_t j : idx) z[j] = 1;
      add_pair(z, w, paired);
      std::size_t pos = s;
      while (pos > 0 && idx[pos - 1] == n - s + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    remaining -= count;
    mass_left -= mass[s];
  }

  if (first_sampled <= num_sizes && remaining >= 1) {
    std::vector<double> cumulative;
    double total = 0;
    for (std::size_t s = first_sampled; s <= num_sizes; ++s) {
      total += mass[s];
      cumulative.push_back(total);
    }
    // Repeated draws merge into one row with accumulated weight.
    std::map<std::vector<char>, double> drawn;
    Rng rng(budget.seed);
    std::vector<std::size_t> pool(n);
    for (double used = 0; used + 1 <= remaining;) {
      const double u = rng.Uniform() * total;
      std::size_t s =
          std::upper_bound(cumulative.begin(), cumulative.end(), u) -
          cumulative.begin() + first_sampled;
      s = std::min(s, num_sizes);
      for (std::size_t j = 0; j < n; ++j) pool[j] = j;
      // Partial Fisher-Yates: the first s entries form the coalition.
      for (std::size_t j = 0; j < s; ++j) {
        std::swap(pool[j], pool[j + rng.Below(n - j)]);
      }
      std::vector<char> z(n, 0);
      for (std::size_t j = 0; j < s; ++j) z[pool[j]] = 1;
      drawn[z] += 1;
      used += 1;
      if (s != n - s) {
        std::vector<char> c(n);
        for (std::size_t j = 0; j < n; ++j) c[j] = !z[j];
        drawn[c] += 1;
        used += 1;
      }
    }
    double drawn_total = 0;
    for (const auto& [z, c] : drawn) drawn_total += c;
    for (const auto& [z, c] : drawn) add(z, mass_left * c / drawn_total);
  }

  // Eliminate the last coefficient through the efficiency constraint:
  // y - v0 - z_last (v1 - v0) = sum_{j<last} (z_j - z_last) phi_j.
  const std::size_t k = n - 1;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(k, k);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd x(k);
  for (std::size_t i = 0; i < coalitions.size(); ++i) {
    const std::vector<char>& z = coalitions[i];
    Assignment nu;
    for (std::size_t j = 0; j < n; ++j) {
      if (z[j]) nu.Insert(fn.variables[j]);
    }
    const double y = (fn(nu) ? 1.0 : 0.0) - v0 - z[k] * (v1 - v0);
    for (std::size_t j = 0; j < k; ++j) x[j] = z[j] - z[k];
    gram.noalias() += weights[i] * x * x.transpose();
    rhs += weights[i] * y * x;
  }
  Eigen::LDLT<Eigen::MatrixXd> solver(gram);
  Eigen::VectorXd phi;
  bool ok = solver.info() == Eigen::Success && solver.isPositive();
  if (ok) {
    phi = solver.solve(rhs);
    ok = solver.info() == Eigen::Success && phi.allFinite() &&
         solver.vectorD().minCoeff() > 1e-12 * std::max(1.0, gram.norm());
  }
  if (!ok) {
    gram += kKernelShapRidge * Eigen::MatrixXd::Identity(k, k);
    phi = Eigen::LDLT<Eigen::MatrixXd>(gram).solve(rhs);
  }

  std::vector<std::pair<FactId, double>> values;
  double rest = v1 - v0;
  for (std::size_t j = 0; j < k; ++j) {
    values.emplace_back(fn.variables[j], phi[j]);
    rest -= phi[j];
  }
  values.emplace_back(fn.variables[k], rest);
  return MakeRealReport(Method::kKernelShap, db, values);
}

}  // namespace shapdb
