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

// Reproducible synthetic lineages and circuits for tests and benchmarks.

#ifndef SHAPDB_GENERATOR_H_
#define SHAPDB_GENERATOR_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "shapdb/circuit.h"
#include "shapdb/lineage.h"

namespace shapdb {

struct DnfSpec {
  std::size_t n_facts = 8;  // endogenous, ids 1..n_facts
  std::size_t n_monomials = 6;
  std::size_t monomial_width = 2;
  std::uint64_t seed = 0;
  // Exogenous facts, ids n_facts+1.., drawn into monomials like the others.
  std::size_t n_exogenous = 0;
};

// Monomials of exactly monomial_width distinct facts, chosen uniformly.
// Facts may appear in no monomial.
DnfLineage GenerateDnf(const DnfSpec& spec);

struct CorpusSpec {
  std::size_t count = 100;
  std::size_t min_facts = 4, max_facts = 12;
  std::size_t min_monomials = 1, max_monomials = 10;
  std::size_t min_width = 1, max_width = 3;
  std::size_t max_exogenous = 0;
  std::uint64_t seed = 0;
};

// Instance i draws its sizes uniformly from the ranges (widths capped at
// the number of facts).
std::vector<DnfLineage> GenerateCorpus(const CorpusSpec& spec);

struct CircuitSpec {
  std::size_t n_facts = 6;
  std::size_t n_gates = 12;  // internal gates on top of the variables
  std::size_t max_fanin = 3;
  std::uint64_t seed = 0;
  std::size_t n_exogenous = 0;
};

// Random And/Or/Not DAG over Var gates (and occasional constants); the
// output is the last gate. Not monotone, not deterministic in general.
BooleanCircuit GenerateCircuit(const CircuitSpec& spec);

}  // namespace shapdb

#endif  // SHAPDB_GENERATOR_H_
