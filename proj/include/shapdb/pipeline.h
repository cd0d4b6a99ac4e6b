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

// The end-to-end exact route (fix exogenous facts, Tseytin, compile, purge,
// stratified counting) and the hybrid strategy that falls back to the CNF
// proxy when it runs out of time or compilation budget.

#ifndef SHAPDB_PIPELINE_H_
#define SHAPDB_PIPELINE_H_

#include <cstddef>
#include <optional>
#include <string>

#include "shapdb/circuit.h"
#include "shapdb/cnf.h"
#include "shapdb/ddnnf.h"
#include "shapdb/deadline.h"
#include "shapdb/report.h"

namespace shapdb {

inline constexpr double kDefaultHybridTimeout = 2.5;

struct PipelineOptions {
  std::size_t node_budget = CompileOptions{}.node_budget;
  const Deadline* deadline = nullptr;
  // When non-empty, the CNF, compiled and purged d-DNNF are written here as
  // encoding.cnf, compiled.nnf and purged.nnf.
  std::string emit_dir;
};

struct PipelineArtifacts {
  CnfFormula cnf;
  Ddnnf compiled;
  Ddnnf purged;
  CompileStats stats;
};

// Exact Shapley values of every endogenous fact of the circuit's database.
// Timings of the stages are recorded in the report.
ShapleyReport ExactPipeline(const BooleanCircuit& circuit,
                            const PipelineOptions& options = {},
                            PipelineArtifacts* artifacts = nullptr);

// Same route from a CNF whose auxiliary variables are Tseytin variables.
// With `external`, that d-DNNF of the CNF is used instead of compiling.
ShapleyReport ExactFromCnf(const CnfFormula& cnf,
                           const PipelineOptions& options = {},
                           const Ddnnf* external = nullptr);

// The CNF the pipeline compiles: Tseytin of the circuit, exogenous facts
// fixed to true.
CnfFormula PrepareCnf(const BooleanCircuit& circuit);

struct HybridOptions {
  double timeout_seconds = kDefaultHybridTimeout;
  std::size_t node_budget = CompileOptions{}.node_budget;
  // When false, a timeout or budget failure propagates instead.
  bool fallback = true;
};

// Exact report if the pipeline finishes under the budget; otherwise the CNF
// proxy report (method proxy, not comparable) with the reason in `note`.
ShapleyReport Hybrid(const BooleanCircuit& circuit,
                     const HybridOptions& options = {});
ShapleyReport HybridFromCnf(const CnfFormula& cnf,
                            const HybridOptions& options = {});

}  // namespace shapdb

#endif  // SHAPDB_PIPELINE_H_
