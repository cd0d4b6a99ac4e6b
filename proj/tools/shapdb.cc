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

// shapdb: Shapley values of database facts from lineage files.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shapdb/brute_force.h"
#include "shapdb/circuit.h"
#include "shapdb/cnf.h"
#include "shapdb/ddnnf.h"
#include "shapdb/errors.h"
#include "shapdb/generator.h"
#include "shapdb/inexact.h"
#include "shapdb/lineage.h"
#include "shapdb/metrics.h"
#include "shapdb/pipeline.h"
#include "shapdb/pqe.h"
#include "shapdb/report.h"
#include "shapdb/shapley_exact.h"

namespace {

using namespace shapdb;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInternal = 3;

struct Config {
  std::string input;
  std::string format;  // empty: guess from the extension
  std::string nnf;
  std::string output;
  std::string output_format = "csv";
  std::uint64_t seed = 0;
  std::size_t samples_per_fact = 20;
  double timeout = kDefaultHybridTimeout;
  std::size_t node_budget = CompileOptions{}.node_budget;
  bool no_fallback = false;
  bool no_run_info = false;
  std::string emit_dir;
  int verbose = 0;
};

double EnvDouble(const char* name, double fallback) {
  const char* value = std::getenv(name);
  if (value == nullptr || *value == '\0') return fallback;
  try {
    return std::stod(value);
  } catch (const std::exception&) {
    throw InputError(std::string("bad value for ") + name + ": " + value);
  }
}

std::string Timestamp() {
  const std::time_t now = std::time(nullptr);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buffer;
}

std::string GuessFormat(const Config& config) {
  if (!config.format.empty()) return config.format;
  const std::string ext = std::filesystem::path(config.input).extension();
  if (ext == ".dnf") return "dnf";
  if (ext == ".json") return "circuit";
  if (ext == ".cnf" || ext == ".dimacs") {
    return config.nnf.empty() ? "dimacs" : "dimacs+nnf";
  }
  throw InputError("cannot tell the format of " + config.input +
                   "; pass --format dnf|circuit|dimacs|dimacs+nnf");
}

// An input file in any of the supported formats, with the views the
// methods need built on demand.
class Input {
 public:
  explicit Input(const Config& config) : config_(config) {
    format_ = GuessFormat(config);
    if (format_ == "dnf") {
      lineage_.emplace(ReadDnfFile(config.input));
      circuit_.emplace(CircuitFromDnf(lineage_->FixExogenous()));
    } else if (format_ == "circuit") {
      circuit_.emplace(ReadCircuitFile(config.input));
    } else if (format_ == "dimacs" || format_ == "dimacs+nnf") {
      cnf_.emplace(ReadDimacsFile(config.input));
      if (format_ == "dimacs+nnf") {
        if (config.nnf.empty()) throw InputError("dimacs+nnf needs --nnf");
        external_.emplace(ReadNnfFile(config.nnf));
      }
    } else {
      throw InputError("unknown format '" + format_ + "'");
    }
    if (format_ != "dimacs+nnf" && !config.nnf.empty()) {
      throw InputError("--nnf only applies to the dimacs+nnf format");
    }
  }

  bool from_cnf() const { return cnf_.has_value() && !circuit_.has_value(); }

  DatabasePtr database() const {
    if (lineage_) return lineage_->database_ptr();
    if (circuit_) return circuit_->database_ptr();
    if (!cnf_db_) cnf_db_ = cnf_->vars.ToDatabase();
    return cnf_db_;
  }

  const CnfFormula& cnf() {
    if (!cnf_) cnf_.emplace(PrepareCnf(*circuit_));
    return *cnf_;
  }

  const Ddnnf* external() const { return external_ ? &*external_ : nullptr; }

  // Exact report through the knowledge-compilation route.
  ShapleyReport Exact(const Deadline* deadline) {
    PipelineOptions options;
    options.node_budget = config_.node_budget;
    options.deadline = deadline;
    options.emit_dir = config_.emit_dir;
    if (circuit_) return ExactPipeline(*circuit_, options);
    return ExactFromCnf(*cnf_, options, external());
  }

  // A deterministic and decomposable circuit of the endogenous lineage.
  const BooleanCircuit& DdCircuit() {
    if (!dd_) {
      CompileOptions options;
      options.node_budget = config_.node_budget;
      Ddnnf compiled = external_ ? *external_ : Compile(cnf(), options);
      compiled.vars() = cnf().vars;
      dd_.emplace(ToCircuit(PurgeTseytin(compiled), database()));
    }
    return *dd_;
  }

  // The endogenous lineage as a function of D_n.
  BooleanFunction Function() {
    if (lineage_) return lineage_->AsFunction();
    if (circuit_) return AsFunction(*circuit_);
    return AsFunction(DdCircuit());
  }

  ShapleyReport Proxy() { return CnfProxyReport(cnf()); }

  ShapleyReport Hybrid(const HybridOptions& options) {
    if (circuit_) return shapdb::Hybrid(*circuit_, options);
    return HybridFromCnf(*cnf_, options);
  }

 private:
  const Config& config_;
  std::string format_;
  std::optional<DnfLineage> lineage_;
  std::optional<BooleanCircuit> circuit_;
  std::optional<CnfFormula> cnf_;
  std::optional<Ddnnf> external_;
  std::optional<BooleanCircuit> dd_;
  mutable DatabasePtr cnf_db_;
};

void WriteOutput(const Config& config, const std::string& text) {
  if (config.output.empty() || config.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(config.output);
  if (!out) throw InputError("cannot write " + config.output);
  out << text;
}

std::string Render(const Config& config, const ShapleyReport& report) {
  if (config.output_format == "json") {
    return WriteJson(report, config.no_run_info ? "" : Timestamp());
  }
  return WriteCsv(report);
}

void Log(const Config& config, const ShapleyReport& report) {
  if (config.verbose == 0) return;
  std::cerr << "method " << MethodName(report.method) << "\n";
  if (!report.note.empty()) std::cerr << "note " << report.note << "\n";
  for (const auto& [stage, seconds] : report.timings) {
    std::cerr << "time " << stage << " " << seconds << " s\n";
  }
}

int Emit(const Config& config, ShapleyReport report, double seconds) {
  report.timings["total"] = seconds;
  Log(config, report);
  WriteOutput(config, Render(config, report));
  return kExitOk;
}

double Since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

ShapleyReport BruteReport(const BooleanFunction& fn, const Database& db) {
  std::vector<std::pair<FactId, Rational>> values;
  for (FactId f : fn.variables) {
    values.emplace_back(f, BruteForceShapleyChecked(fn, f));
  }
  return MakeExactReport(Method::kBrute, db, values);
}

std::string SlicesText(const std::vector<BigInt>& slices) {
  std::string out = "k,count\n";
  for (std::size_t k = 0; k < slices.size(); ++k) {
    out += std::to_string(k) + "," + slices[k].get_str() + "\n";
  }
  return out;
}

int RunPqe(const Config& config, const std::string& prob_file,
           const std::string& slices_out) {
  const auto start = std::chrono::steady_clock::now();
  Input input(config);
  const BooleanCircuit& dd = input.DdCircuit();
  if (!prob_file.empty()) {
    const Rational p = ProbDdnnf(dd, ReadProbabilityFile(prob_file));
    WriteOutput(config, "probability," + ToString(p) + "," +
                            FormatDouble(ToDouble(p)) + "\n");
    return kExitOk;
  }
  const std::vector<BigInt> slices = SlicesViaVandermonde(dd);
  ShapleyReport report = ShapleyViaPqeAll(dd);
  report.timings["total"] = Since(start);
  Log(config, report);
  if (config.output_format == "json") {
    nlohmann::json doc = nlohmann::json::parse(
        WriteJson(report, config.no_run_info ? "" : Timestamp()));
    nlohmann::json counts = nlohmann::json::array();
    for (const BigInt& c : slices) counts.push_back(c.get_str());
    doc["slices"] = counts;
    WriteOutput(config, doc.dump(2) + "\n");
  } else {
    WriteOutput(config, WriteCsv(report));
  }
  if (!slices_out.empty()) {
    std::ofstream out(slices_out);
    if (!out) throw InputError("cannot write " + slices_out);
    out << SlicesText(slices);
  } else if (config.verbose && config.output_format != "json") {
    std::cerr << SlicesText(slices);
  }
  return kExitOk;
}

int RunCompile(const Config& config) {
  if (config.emit_dir.empty()) throw InputError("compile needs --emit-dir");
  Input input(config);
  CompileOptions options;
  options.node_budget = config.node_budget;
  const Deadline deadline = Deadline::After(config.timeout);
  options.deadline = &deadline;
  CompileStats stats;
  const CnfFormula& cnf = input.cnf();
  Ddnnf compiled =
      input.external() ? *input.external() : Compile(cnf, options, &stats);
  compiled.vars() = cnf.vars;
  const Ddnnf purged = PurgeTseytin(compiled);
  std::filesystem::create_directories(config.emit_dir);
  auto write = [&](const std::string& name, const std::string& text) {
    const std::string path =
        (std::filesystem::path(config.emit_dir) / name).string();
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text;
  };
  write("encoding.cnf", WriteDimacs(cnf));
  write("compiled.nnf", WriteNnf(compiled));
  write("purged.nnf", WriteNnf(purged));
  std::ostringstream summary;
  summary << "variables," << cnf.num_vars() << "\n"
          << "clauses," << cnf.clauses.size() << "\n"
          << "compiled_nodes," << compiled.root() + 1 << "\n"
          << "purged_nodes," << purged.root() + 1 << "\n"
          << "decisions," << stats.decisions << "\n"
          << "cache_hits," << stats.cache_hits << "\n";
  WriteOutput(config, summary.str());
  return kExitOk;
}

int RunMetrics(const Config& config, const std::string& truth_path,
               const std::string& estimate_path) {
  const ShapleyReport truth = ReadReportFile(truth_path);
  const ShapleyReport estimate = ReadReportFile(estimate_path);
  if (!IsExact(truth.method)) {
    std::cerr << "warning: truth report comes from inexact method "
              << MethodName(truth.method) << "\n";
  }
  const RankingComparison c = Compare(truth, estimate);
  if (config.output_format == "json") {
    nlohmann::json doc;
    doc["ndcg"] = FormatDouble(c.ndcg);
    for (const auto& [k, p] : c.precision) {
      doc["precision@" + std::to_string(k)] = FormatDouble(p);
    }
    doc["l1"] = FormatDouble(c.l1);
    doc["l2"] = FormatDouble(c.l2);
    WriteOutput(config, doc.dump(2) + "\n");
  } else {
    std::string out = "metric,value\nndcg," + FormatDouble(c.ndcg) + "\n";
    for (const auto& [k, p] : c.precision) {
      out += "precision@" + std::to_string(k) + "," + FormatDouble(p) + "\n";
    }
    out += "l1," + FormatDouble(c.l1) + "\nl2," + FormatDouble(c.l2) + "\n";
    WriteOutput(config, out);
  }
  return kExitOk;
}

struct BenchRow {
  std::string instance;
  std::size_t facts = 0;
  std::string method;
  std::string status;
  double seconds = 0;
  std::optional<RankingComparison> metrics;
};

std::vector<BenchRow> BenchInstance(const Config& config,
                                    const std::string& path,
                                    const std::vector<std::string>& methods) {
  std::vector<BenchRow> rows;
  const DnfLineage lineage = ReadDnfFile(path);
  const BooleanCircuit circuit = CircuitFromDnf(lineage.FixExogenous());
  const BooleanFunction fn = lineage.AsFunction();
  const std::string name = std::filesystem::path(path).filename();
  const std::size_t facts = fn.variables.size();

  std::optional<ShapleyReport> truth;
  {
    BenchRow row{name, facts, "exact", "ok", 0, std::nullopt};
    const auto start = std::chrono::steady_clock::now();
    const Deadline deadline = Deadline::After(config.timeout);
    PipelineOptions options;
    options.node_budget = config.node_budget;
    options.deadline = &deadline;
    try {
      truth = ExactPipeline(circuit, options);
    } catch (const TimeoutError&) {
      row.status = "timeout";
    } catch (const BudgetExhaustedError&) {
      row.status = "budget";
    }
    row.seconds = Since(start);
    if (truth) row.metrics = Compare(*truth, *truth);
    if (std::find(methods.begin(), methods.end(), "exact") != methods.end()) {
      rows.push_back(row);
    }
  }
  SampleBudget budget{config.seed, config.samples_per_fact};
  for (const std::string& method : methods) {
    if (method == "exact") continue;
    BenchRow row{name, facts, method, "ok", 0, std::nullopt};
    const auto start = std::chrono::steady_clock::now();
    ShapleyReport estimate;
    if (method == "proxy") {
      estimate = CnfProxyReport(PrepareCnf(circuit));
    } else if (method == "mc") {
      estimate = MonteCarlo(fn, lineage.database(), budget);
    } else if (method == "kshap") {
      if (facts < 2) {
        row.status = "skipped";
        rows.push_back(row);
        continue;
      }
      estimate = KernelShap(fn, lineage.database(), budget);
    } else if (method == "hybrid") {
      HybridOptions options;
      options.timeout_seconds = config.timeout;
      options.node_budget = config.node_budget;
      estimate = Hybrid(circuit, options);
      if (estimate.method == Method::kProxy) row.status = "fallback";
    } else {
      throw InputError("unknown bench method '" + method + "'");
    }
    row.seconds = Since(start);
    if (truth && !truth->scores.empty()) row.metrics = Compare(*truth, estimate);
    rows.push_back(row);
  }
  return rows;
}

int RunBench(const Config& config, const std::string& corpus,
             const std::string& methods_list, std::size_t threads) {
  std::vector<std::string> methods;
  std::stringstream ss(methods_list);
  for (std::string m; std::getline(ss, m, ',');) {
    if (!m.empty()) methods.push_back(m);
  }
  std::vector<std::string> files;
  if (!std::filesystem::is_directory(corpus)) {
    throw InputError(corpus + " is not a directory");
  }
  for (const auto& entry : std::filesystem::directory_iterator(corpus)) {
    if (entry.path().extension() == ".dnf") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  // Parse everything up front so input errors surface before timing starts.
  for (const std::string& f : files) ReadDnfFile(f);

  std::vector<std::vector<BenchRow>> results(files.size());
  std::vector<std::string> errors(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        results[i] = BenchInstance(config, files[i], methods);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, files.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!errors[i].empty()) throw InputError(files[i] + ": " + errors[i]);
  }

  std::string out =
      "instance,facts,method,status,wall_seconds,ndcg,precision@1,"
      "precision@3,precision@5,precision@10,l1,l2\n";
  for (const auto& rows : results) {
    for (const BenchRow& row : rows) {
      out += row.instance + "," + std::to_string(row.facts) + "," + row.method +
             "," + row.status + "," + FormatDouble(row.seconds);
      if (row.metrics) {
        out += "," + FormatDouble(row.metrics->ndcg);
        for (std::size_t k : {1, 3, 5, 10}) {
          auto it = row.metrics->precision.find(k);
          out += ",";
          if (it != row.metrics->precision.end()) out += FormatDouble(it->second);
        }
        out += "," + FormatDouble(row.metrics->l1) + "," +
               FormatDouble(row.metrics->l2);
      } else {
        out += ",,,,,,,";
      }
      out += "\n";
    }
  }
  WriteOutput(config, out);
  return kExitOk;
}

int RunGenerate(const Config& config, const CorpusSpec& spec) {
  if (config.output.empty()) throw InputError("generate needs --out <dir>");
  std::filesystem::create_directories(config.output);
  const std::vector<DnfLineage> corpus = GenerateCorpus(spec);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "instance_%04zu.dnf", i);
    std::ofstream out(std::filesystem::path(config.output) / name);
    if (!out) throw InputError("cannot write into " + config.output);
    out << WriteDnf(corpus[i]);
  }
  return kExitOk;
}

void AddInputOptions(CLI::App* cmd, Config& config) {
  cmd->add_option("--in,-i", config.input, "Input file")->required();
  cmd->add_option("--format", config.format,
                  "Input format (default: from the extension)")
      ->check(CLI::IsMember({"dnf", "circuit", "dimacs", "dimacs+nnf"}));
  cmd->add_option("--nnf", config.nnf,
                  "d-DNNF of the DIMACS input from an external compiler");
}

void AddOutputOptions(CLI::App* cmd, Config& config) {
  cmd->add_option("--out,-o", config.output, "Output file (default stdout)");
  cmd->add_option("--output-format", config.output_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--no-run-info", config.no_run_info,
                "Omit the timestamp and timings from JSON output");
}

void AddSamplingOptions(CLI::App* cmd, Config& config) {
  cmd->add_option("--seed", config.seed, "Random seed");
  cmd->add_option("--samples-per-fact", config.samples_per_fact,
                  "Permutations (mc) or coalitions per fact (kshap)")
      ->check(CLI::PositiveNumber);
}

void AddBudgetOptions(CLI::App* cmd, Config& config) {
  cmd->add_option("--timeout", config.timeout,
                  "Wall-clock budget in seconds (env SHAPDB_TIMEOUT)");
  cmd->add_option("--node-budget", config.node_budget,
                  "Maximum d-DNNF nodes during compilation");
}

}  // namespace

int main(int argc, char** argv) {
  Config config;
  std::string prob_file, slices_out, truth, estimate, corpus;
  std::string methods = "exact,proxy,mc,kshap";
  std::size_t threads = 1;
  CorpusSpec corpus_spec;

  CLI::App app{"Shapley values of database facts from lineage"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("-v,--verbose", config.verbose, "Print timings to stderr");
  try {
    config.timeout = EnvDouble("SHAPDB_TIMEOUT", kDefaultHybridTimeout);
    threads = static_cast<std::size_t>(EnvDouble("SHAPDB_THREADS", 1));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  auto* exact = app.add_subcommand("exact", "Exact values via d-DNNF");
  AddInputOptions(exact, config);
  AddOutputOptions(exact, config);
  exact->add_option("--node-budget", config.node_budget, "Maximum d-DNNF nodes");
  exact->add_option("--emit-dir", config.emit_dir,
                    "Write the CNF and d-DNNF intermediates here");

  auto* pqe = app.add_subcommand("pqe", "Exact values via probabilities");
  AddInputOptions(pqe, config);
  AddOutputOptions(pqe, config);
  pqe->add_option("--node-budget", config.node_budget, "Maximum d-DNNF nodes");
  pqe->add_option("--prob", prob_file,
                  "Only print the probability under this fact/probability map");
  pqe->add_option("--slices-out", slices_out, "Write the slice counts here");

  auto* brute = app.add_subcommand("brute", "Exact values by enumeration");
  AddInputOptions(brute, config);
  AddOutputOptions(brute, config);

  auto* proxy = app.add_subcommand("proxy", "CNF proxy ranking");
  AddInputOptions(proxy, config);
  AddOutputOptions(proxy, config);

  auto* mc = app.add_subcommand("mc", "Permutation sampling");
  AddInputOptions(mc, config);
  AddOutputOptions(mc, config);
  AddSamplingOptions(mc, config);

  auto* kshap = app.add_subcommand("kshap", "KernelSHAP");
  AddInputOptions(kshap, config);
  AddOutputOptions(kshap, config);
  AddSamplingOptions(kshap, config);

  auto* hybrid = app.add_subcommand("hybrid", "Exact under a timeout, else proxy");
  AddInputOptions(hybrid, config);
  AddOutputOptions(hybrid, config);
  AddBudgetOptions(hybrid, config);
  hybrid->add_flag("--no-fallback", config.no_fallback,
                   "Fail with exit code 2 instead of falling back");

  auto* compile = app.add_subcommand("compile", "Write CNF/NNF intermediates");
  AddInputOptions(compile, config);
  AddBudgetOptions(compile, config);
  compile->add_option("--emit-dir", config.emit_dir, "Output directory")
      ->required();
  compile->add_option("--out,-o", config.output, "Summary file");

  auto* bench = app.add_subcommand("bench", "Per-instance benchmark CSV");
  bench->add_option("--corpus", corpus, "Directory of .dnf files")->required();
  bench->add_option("--methods", methods,
                    "Comma-separated: exact,proxy,mc,kshap,hybrid");
  bench->add_option("--threads", threads, "Worker threads (env SHAPDB_THREADS)");
  bench->add_option("--out,-o", config.output, "Output CSV");
  AddSamplingOptions(bench, config);
  AddBudgetOptions(bench, config);

  auto* metrics = app.add_subcommand("metrics", "Compare two JSON reports");
  metrics->add_option("--truth", truth, "Exact report (JSON)")->required();
  metrics->add_option("--estimate", estimate, "Estimated report (JSON)")
      ->required();
  metrics->add_option("--out,-o", config.output, "Output file");
  metrics->add_option("--output-format", config.output_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* generate = app.add_subcommand("generate", "Random monotone DNF corpus");
  generate->add_option("--out,-o", config.output, "Output directory")->required();
  generate->add_option("--count", corpus_spec.count, "Number of instances");
  generate->add_option("--min-facts", corpus_spec.min_facts);
  generate->add_option("--max-facts", corpus_spec.max_facts);
  generate->add_option("--min-monomials", corpus_spec.min_monomials);
  generate->add_option("--max-monomials", corpus_spec.max_monomials);
  generate->add_option("--min-width", corpus_spec.min_width);
  generate->add_option("--max-width", corpus_spec.max_width);
  generate->add_option("--max-exogenous", corpus_spec.max_exogenous);
  generate->add_option("--seed", corpus_spec.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    if (*exact) {
      Input input(config);
      ShapleyReport report = input.Exact(nullptr);
      return Emit(config, std::move(report), Since(start));
    }
    if (*pqe) return RunPqe(config, prob_file, slices_out);
    if (*brute) {
      Input input(config);
      const BooleanFunction fn = input.Function();
      ShapleyReport report = BruteReport(fn, *input.database());
      return Emit(config, std::move(report), Since(start));
    }
    if (*proxy) {
      Input input(config);
      ShapleyReport report = input.Proxy();
      return Emit(config, std::move(report), Since(start));
    }
    if (*mc || *kshap) {
      Input input(config);
      const BooleanFunction fn = input.Function();
      const SampleBudget budget{config.seed, config.samples_per_fact};
      ShapleyReport report = *mc ? MonteCarlo(fn, *input.database(), budget)
                                 : KernelShap(fn, *input.database(), budget);
      return Emit(config, std::move(report), Since(start));
    }
    if (*hybrid) {
      Input input(config);
      HybridOptions options;
      options.timeout_seconds = config.timeout;
      options.node_budget = config.node_budget;
      options.fallback = !config.no_fallback;
      ShapleyReport report = input.Hybrid(options);
      return Emit(config, std::move(report), Since(start));
    }
    if (*compile) return RunCompile(config);
    if (*bench) return RunBench(config, corpus, methods, threads);
    if (*metrics) return RunMetrics(config, truth, estimate);
    if (*generate) return RunGenerate(config, corpus_spec);
  } catch (const TimeoutError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const BudgetExhaustedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
