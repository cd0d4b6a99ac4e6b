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

#include "shapdb/generator.h"

#include <algorithm>
#include <memory>
#include <string>

#include "shapdb/errors.h"
#include "shapdb/random.h"

namespace shapdb {

namespace {

DatabasePtr MakeDatabase(std::size_t endogenous, std::size_t exogenous) {
  std::vector<Fact> facts;
  for (std::size_t i = 1; i <= endogenous; ++i) {
    facts.push_back(Fact{static_cast<FactId>(i), "f" + std::to_string(i),
                         FactKind::kEndogenous});
  }
  for (std::size_t i = 1; i <= exogenous; ++i) {
    facts.push_back(Fact{static_cast<FactId>(endogenous + i),
                         "x" + std::to_string(i), FactKind::kExogenous});
  }
  return std::make_shared<Database>(std::move(facts));
}

std::size_t Between(Rng& rng, std::size_t lo, std::size_t hi) {
  if (hi < lo) throw InputError("empty range in generator spec");
  return lo + rng.Below(hi - lo + 1);
}

}  // namespace

DnfLineage GenerateDnf(const DnfSpec& spec) {
  const std::size_t total = spec.n_facts + spec.n_exogenous;
  if (spec.monomial_width > total) {
    throw InputError("monomial width exceeds the number of facts");
  }
  if (spec.n_monomials > 0 && spec.monomial_width == 0) {
    throw InputError("monomial width must be at least 1");
  }
  DatabasePtr db = MakeDatabase(spec.n_facts, spec.n_exogenous);
  Rng rng(spec.seed);
  std::vector<FactId> pool(total);
  std::vector<DnfLineage::Monomial> monomials;
  for (std::size_t m = 0; m < spec.n_monomials; ++m) {
    for (std::size_t i = 0; i < total; ++i) pool[i] = static_cast<FactId>(i + 1);
    for (std::size_t j = 0; j < spec.monomial_width; ++j) {
      std::swap(pool[j], pool[j + rng.Below(total - j)]);
    }
    DnfLineage::Monomial monomial(pool.begin(),
                                  pool.begin() + spec.monomial_width);
    std::sort(monomial.begin(), monomial.end());
    monomials.push_back(std::move(monomial));
  }
  return DnfLineage(db, std::move(monomials));
}

std::vector<DnfLineage> GenerateCorpus(const CorpusSpec& spec) {
  Rng rng(spec.seed);
  std::vector<DnfLineage> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    DnfSpec d;
    d.n_facts = Between(rng, spec.min_facts, spec.max_facts);
    d.n_exogenous = spec.max_exogenous == 0 ? 0 : rng.Below(spec.max_exogenous + 1);
    d.n_monomials = Between(rng, spec.min_monomials, spec.max_monomials);
    const std::size_t total = d.n_facts + d.n_exogenous;
    d.monomial_width = std::min(Between(rng, spec.min_width, spec.max_width),
                                total);
    d.seed = rng.Next();
    out.push_back(GenerateDnf(d));
  }
  return out;
}

BooleanCircuit GenerateCircuit(const CircuitSpec& spec) {
  if (spec.n_facts + spec.n_exogenous == 0) {
    throw InputError("circuit needs at least one fact");
  }
  Rng rng(spec.seed);
  BooleanCircuit c(MakeDatabase(spec.n_facts, spec.n_exogenous));
  const std::size_t total = spec.n_facts + spec.n_exogenous;
  for (std::size_t i = 1; i <= total; ++i) c.AddVar(static_cast<FactId>(i));
  for (std::size_t g = 0; g < spec.n_gates; ++g) {
    const std::size_t size = c.size();
    const std::uint64_t roll = rng.Below(20);
    if (roll == 0) {
      c.AddGate(Gate{rng.Below(2) ? GateKind::kTrue : GateKind::kFalse, {}, 0});
    } else if (roll < 5) {
      c.AddNot(static_cast<GateId>(rng.Below(size)));
    } else {
      const std::size_t fanin = 1 + rng.Below(std::max<std::size_t>(spec.max_fanin, 1));
      std::vector<GateId> inputs;
      for (std::size_t k = 0; k < fanin; ++k) {
        // Favour recent gates so the DAG grows upwards.
        const std::size_t lo = size > 4 && rng.Below(2) ? size - 4 : 0;
        inputs.push_back(static_cast<GateId>(lo + rng.Below(size - lo)));
      }
      if (roll < 12) {
        c.AddAnd(std::move(inputs));
      } else {
        c.AddOr(std::move(inputs));
      }
    }
  }
  c.SetOutput(static_cast<GateId>(c.size() - 1));
  return c;
}

}  // namespace shapdb
