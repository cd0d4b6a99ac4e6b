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

// Per-fact score reports shared by every scoring method, with their CSV and
// JSON renderings.

#ifndef SHAPDB_REPORT_H_
#define SHAPDB_REPORT_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shapdb/lineage.h"
#include "shapdb/numeric.h"

namespace shapdb {

enum class Method { kExactDdnnf, kExactPqe, kBrute, kProxy, kMonteCarlo, kKernelShap };

// "exact-ddnnf", "exact-pqe", "brute", "proxy", "mc", "kernelshap".
// ParseMethod also accepts the CLI spelling "kshap".
std::string MethodName(Method method);
Method ParseMethod(const std::string& name);
bool IsExact(Method method);

struct FactScore {
  FactId id = 0;
  std::string label;
  std::optional<Rational> exact;  // absent for real-valued estimators
  double value = 0.0;
  std::size_t rank = 0;           // 1-based
};

struct ShapleyReport {
  Method method = Method::kExactDdnnf;
  // False when the scores are not on the Shapley scale (proxy values).
  bool comparable = true;
  // Why the method was chosen, e.g. a hybrid fallback reason.
  std::string note;
  std::vector<FactScore> scores;  // sorted by fact id
  // Wall-clock timings in seconds; not part of the deterministic output.
  using Timings = std::map<std::string, double>;
  Timings timings;

  const FactScore* Find(FactId id) const;
  std::vector<FactId> Ranking() const;  // fact ids, rank 1 first
  std::vector<double> Values() const;   // in fact id order
};

// Reports over the endogenous facts of `db`; ranks are assigned by
// descending value, ties by ascending fact id.
ShapleyReport MakeExactReport(Method method, const Database& db,
                              const std::vector<std::pair<FactId, Rational>>&
                                  values);
ShapleyReport MakeRealReport(Method method, const Database& db,
                             const std::vector<std::pair<FactId, double>>&
                                 values);

// Recomputes ranks from the values (exact ones when present).
void AssignRanks(ShapleyReport* report);

// fact_id,label,value_num,value_den,value_float,rank
std::string WriteCsv(const ShapleyReport& report);
// JSON with the CSV fields per fact, the method tag, comparability and note.
// `timestamp` and timings go into a "run" object that is ignored when
// comparing reports; an empty timestamp omits the object.
std::string WriteJson(const ShapleyReport& report,
                      const std::string& timestamp = "");
ShapleyReport ParseReportJson(const std::string& text,
                              const std::string& source = "");
ShapleyReport ReadReportFile(const std::string& path);

// Shortest decimal rendering that reads back as the same double.
std::string FormatDouble(double value);

}  // namespace shapdb

#endif  // SHAPDB_REPORT_H_
