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

#include "shapdb/pipeline.h"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "shapdb/errors.h"
#include "shapdb/inexact.h"
#include "shapdb/shapley_exact.h"

namespace shapdb {

namespace {

class Stopwatch {
 public:
  double Lap() {
    const auto now = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return seconds;
  }

 private:
  std::chrono::steady_clock::time_point last_ =
      std::chrono::steady_clock::now();
};

void Emit(const std::string& dir, const std::string& name,
          const std::string& text) {
  std::filesystem::create_directories(dir);
  const std::string path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

ShapleyReport FromCompiled(const Ddnnf& compiled, DatabasePtr universe,
                           const PipelineOptions& options, Stopwatch& clock,
                           ShapleyReport::Timings* timings,
                           Ddnnf* purged_out) {
  Ddnnf purged = PurgeTseytin(compiled);
  (*timings)["purge"] = clock.Lap();
  if (!options.emit_dir.empty()) {
    Emit(options.emit_dir, "purged.nnf", WriteNnf(purged));
  }
  const BooleanCircuit circuit = ToCircuit(purged, std::move(universe));
  ShapleyReport report = ShapleyAll(circuit, options.deadline);
  (*timings)["shapley"] = clock.Lap();
  if (purged_out != nullptr) *purged_out = std::move(purged);
  return report;
}

}  // namespace

CnfFormula PrepareCnf(const BooleanCircuit& circuit) {
  return Tseytin(FixExogenousCircuit(circuit));
}

ShapleyReport ExactPipeline(const BooleanCircuit& circuit,
                            const PipelineOptions& options,
                            PipelineArtifacts* artifacts) {
  Stopwatch clock;
  ShapleyReport::Timings timings;
  if (options.deadline != nullptr) options.deadline->Poll("exact pipeline");
  CnfFormula cnf = PrepareCnf(circuit);
  timings["tseytin"] = clock.Lap();
  if (!options.emit_dir.empty()) {
    Emit(options.emit_dir, "encoding.cnf", WriteDimacs(cnf));
  }
  CompileOptions compile;
  compile.node_budget = options.node_budget;
  compile.deadline = options.deadline;
  CompileStats stats;
  Ddnnf compiled = Compile(cnf, compile, &stats);
  timings["compile"] = clock.Lap();
  if (!options.emit_dir.empty()) {
    Emit(options.emit_dir, "compiled.nnf", WriteNnf(compiled));
  }
  Ddnnf purged;
  ShapleyReport report = FromCompiled(compiled, circuit.database_ptr(),
                                      options, clock, &timings, &purged);
  report.timings = std::move(timings);
  if (artifacts != nullptr) {
    artifacts->cnf = std::move(cnf);
    artifacts->compiled = std::move(compiled);
    artifacts->purged = std::move(purged);
    artifacts->stats = stats;
  }
  return report;
}

ShapleyReport ExactFromCnf(const CnfFormula& cnf,
                           const PipelineOptions& options,
                           const Ddnnf* external) {
  Stopwatch clock;
  ShapleyReport::Timings timings;
  if (options.deadline != nullptr) options.deadline->Poll("exact pipeline");
  Ddnnf compiled;
  if (external != nullptr) {
    compiled = *external;
    if (compiled.vars().num_vars() > cnf.num_vars()) {
      throw InputError("d-DNNF uses more variables than the CNF declares");
    }
    compiled.vars() = cnf.vars;
  } else {
    CompileOptions compile;
    compile.node_budget = options.node_budget;
    compile.deadline = options.deadline;
    compiled = Compile(cnf, compile);
    if (!options.emit_dir.empty()) {
      Emit(options.emit_dir, "compiled.nnf", WriteNnf(compiled));
    }
  }
  timings["compile"] = clock.Lap();
  ShapleyReport report = FromCompiled(compiled, cnf.vars.ToDatabase(),
                                      options, clock, &timings, nullptr);
  report.timings = std::move(timings);
  return report;
}

namespace {

template <typename Exact, typename Proxy>
ShapleyReport RunHybrid(const HybridOptions& options, Exact exact,
                        Proxy proxy) {
  const Deadline deadline = Deadline::After(options.timeout_seconds);
  PipelineOptions pipeline;
  pipeline.node_budget = options.node_budget;
  pipeline.deadline = &deadline;
  std::string reason;
  try {
    if (deadline.Expired()) throw TimeoutError("deadline expired before start");
    return exact(pipeline);
  } catch (const TimeoutError& e) {
    if (!options.fallback) throw;
    reason = std::string("timeout: ") + e.what();
  } catch (const BudgetExhaustedError& e) {
    if (!options.fallback) throw;
    reason = std::string("budget exhausted: ") + e.what();
  }
  Stopwatch clock;
  ShapleyReport report = proxy();
  report.timings["proxy"] = clock.Lap();
  report.note = "fallback to proxy (" + reason + ")";
  return report;
}

}  // namespace

ShapleyReport Hybrid(const BooleanCircuit& circuit,
                     const HybridOptions& options) {
  return RunHybrid(
      options,
      [&](const PipelineOptions& p) { return ExactPipeline(circuit, p); },
      [&] { return CnfProxyReport(PrepareCnf(circuit)); });
}

ShapleyReport HybridFromCnf(const CnfFormula& cnf,
                            const HybridOptions& options) {
  return RunHybrid(
      options, [&](const PipelineOptions& p) { return ExactFromCnf(cnf, p); },
      [&] { return CnfProxyReport(cnf); });
}

}  // namespace shapdb
