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

#include "shapdb/report.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "shapdb/errors.h"

namespace shapdb {

namespace {

using nlohmann::json;

BigInt ParseInteger(const std::string& text, const std::string& source) {
  const std::size_t start = !text.empty() && text[0] == '-' ? 1 : 0;
  if (start == text.size() ||
      text.find_first_not_of("0123456789", start) != std::string::npos) {
    throw ParseError(source, 0, "bad integer '" + text + "'");
  }
  return BigInt(text, 10);
}

const std::pair<Method, const char*> kMethodNames[] = {
    {Method::kExactDdnnf, "exact-ddnnf"}, {Method::kExactPqe, "exact-pqe"},
    {Method::kBrute, "brute"},            {Method::kProxy, "proxy"},
    {Method::kMonteCarlo, "mc"},          {Method::kKernelShap, "kernelshap"},
};

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string MethodName(Method method) {
  for (const auto& [m, name] : kMethodNames) {
    if (m == method) return name;
  }
  return "unknown";
}

Method ParseMethod(const std::string& name) {
  if (name == "kshap") return Method::kKernelShap;
  for (const auto& [m, n] : kMethodNames) {
    if (name == n) return m;
  }
  throw InputError("unknown method '" + name + "'");
}

bool IsExact(Method method) {
  return method == Method::kExactDdnnf || method == Method::kExactPqe ||
         method == Method::kBrute;
}

const FactScore* ShapleyReport::Find(FactId id) const {
  auto it = std::lower_bound(
      scores.begin(), scores.end(), id,
      [](const FactScore& s, FactId target) { return s.id < target; });
  return it != scores.end() && it->id == id ? &*it : nullptr;
}

std::vector<FactId> ShapleyReport::Ranking() const {
  std::vector<FactId> out(scores.size());
  for (const FactScore& s : scores) out.at(s.rank - 1) = s.id;
  return out;
}

std::vector<double> ShapleyReport::Values() const {
  std::vector<double> out;
  out.reserve(scores.size());
  for (const FactScore& s : scores) out.push_back(s.value);
  return out;
}

void AssignRanks(ShapleyReport* report) {
  std::vector<std::size_t> order(report->scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const auto& s = report->scores;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    if (s[a].exact && s[b].exact) {
      if (*s[a].exact != *s[b].exact) return *s[a].exact > *s[b].exact;
    } else if (s[a].value != s[b].value) {
      return s[a].value > s[b].value;
    }
    return s[a].id < s[b].id;
  });
  for (std::size_t r = 0; r < order.size(); ++r) {
    report->scores[order[r]].rank = r + 1;
  }
}

ShapleyReport MakeExactReport(
    Method method, const Database& db,
    const std::vector<std::pair<FactId, Rational>>& values) {
  ShapleyReport report;
  report.method = method;
  for (const auto& [id, value] : values) {
    if (!db.Contains(id)) {
      throw InputError("report value for unknown fact " + std::to_string(id));
    }
    report.scores.push_back(
        FactScore{id, db.Get(id).label, value, ToDouble(value), 0});
  }
  std::sort(report.scores.begin(), report.scores.end(),
            [](const FactScore& a, const FactScore& b) { return a.id < b.id; });
  AssignRanks(&report);
  return report;
}

ShapleyReport MakeRealReport(
    Method method, const Database& db,
    const std::vector<std::pair<FactId, double>>& values) {
  ShapleyReport report;
  report.method = method;
  for (const auto& [id, value] : values) {
    if (!db.Contains(id)) {
      throw InputError("report value for unknown fact " + std::to_string(id));
    }
    report.scores.push_back(
        FactScore{id, db.Get(id).label, std::nullopt, value, 0});
  }
  std::sort(report.scores.begin(), report.scores.end(),
            [](const FactScore& a, const FactScore& b) { return a.id < b.id; });
  AssignRanks(&report);
  return report;
}

std::string FormatDouble(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::string WriteCsv(const ShapleyReport& report) {
  std::ostringstream out;
  out << "fact_id,label,value_num,value_den,value_float,rank\n";
  for (const FactScore& s : report.scores) {
    out << s.id << "," << CsvField(s.label) << ",";
    if (s.exact) {
      out << s.exact->get_num().get_str() << ","
          << s.exact->get_den().get_str();
    } else {
      out << ",";
    }
    out << "," << FormatDouble(s.value) << "," << s.rank << "\n";
  }
  return out.str();
}

std::string WriteJson(const ShapleyReport& report,
                      const std::string& timestamp) {
  json facts = json::array();
  for (const FactScore& s : report.scores) {
    json row;
    row["fact_id"] = s.id;
    row["label"] = s.label;
    if (s.exact) {
      row["value_num"] = s.exact->get_num().get_str();
      row["value_den"] = s.exact->get_den().get_str();
    } else {
      row["value_num"] = nullptr;
      row["value_den"] = nullptr;
    }
    // Strings keep the rendering byte-stable across json versions.
    row["value_float"] = FormatDouble(s.value);
    row["rank"] = s.rank;
    facts.push_back(std::move(row));
  }
  json doc;
  doc["method"] = MethodName(report.method);
  doc["comparable"] = report.comparable;
  doc["note"] = report.note;
  doc["facts"] = std::move(facts);
  if (!timestamp.empty()) {
    json run;
    run["timestamp"] = timestamp;
    json timings = json::object();
    for (const auto& [name, seconds] : report.timings) timings[name] = seconds;
    run["timings"] = std::move(timings);
    doc["run"] = std::move(run);
  }
  return doc.dump(2) + "\n";
}

ShapleyReport ParseReportJson(const std::string& text,
                              const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 0, std::string("invalid JSON: ") + e.what());
  }
  ShapleyReport report;
  try {
    report.method = ParseMethod(doc.at("method").get<std::string>());
    report.comparable = doc.value("comparable", true);
    report.note = doc.value("note", std::string());
    for (const json& row : doc.at("facts")) {
      FactScore s;
      s.id = row.at("fact_id").get<FactId>();
      s.label = row.value("label", std::string());
      const json& num = row.at("value_num");
      if (!num.is_null()) {
        const BigInt n = ParseInteger(num.get<std::string>(), source);
        const BigInt d =
            ParseInteger(row.at("value_den").get<std::string>(), source);
        if (d == 0) throw ParseError(source, 0, "zero value_den");
        s.exact = Rational(n, d);
        s.exact->canonicalize();
      }
      const json& value = row.at("value_float");
      s.value = value.is_string() ? std::stod(value.get<std::string>())
                                  : value.get<double>();
      s.rank = row.at("rank").get<std::size_t>();
      report.scores.push_back(std::move(s));
    }
    if (doc.contains("run") && doc["run"].contains("timings")) {
      for (const auto& [name, seconds] : doc["run"]["timings"].items()) {
        report.timings[name] = seconds.get<double>();
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(source, 0, std::string("bad report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 0, std::string("bad number: ") + e.what());
  }
  std::sort(report.scores.begin(), report.scores.end(),
            [](const FactScore& a, const FactScore& b) { return a.id < b.id; });
  std::vector<char> seen(report.scores.size() + 1, 0);
  for (std::size_t i = 0; i < report.scores.size(); ++i) {
    const FactScore& s = report.scores[i];
    if (i > 0 && report.scores[i - 1].id == s.id) {
      throw ParseError(source, 0, "duplicate fact " + std::to_string(s.id));
    }
    if (s.rank < 1 || s.rank > report.scores.size() || seen[s.rank]) {
      throw ParseError(source, 0, "ranks are not a permutation");
    }
    seen[s.rank] = 1;
  }
  return report;
}

ShapleyReport ReadReportFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseReportJson(buffer.str(), path);
}

}  // namespace shapdb
