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

#include "shapdb/lineage.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "shapdb/errors.h"

namespace shapdb {

Database::Database(std::vector<Fact> facts) : facts_(std::move(facts)) {
  std::sort(facts_.begin(), facts_.end(),
            [](const Fact& a, const Fact& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < facts_.size(); ++i) {
    if (facts_[i].id == 0) throw InputError("fact ids must be >= 1");
    if (!index_.emplace(facts_[i].id, i).second) {
      throw InputError("duplicate fact id " + std::to_string(facts_[i].id));
    }
  }
}

const Fact& Database::Get(FactId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw InputError("unknown fact id " + std::to_string(id));
  }
  return facts_[it->second];
}

bool Database::IsEndogenous(FactId id) const {
  auto it = index_.find(id);
  return it != index_.end() && facts_[it->second].endogenous();
}

std::vector<FactId> Database::Endogenous() const {
  std::vector<FactId> out;
  for (const Fact& f : facts_) {
    if (f.endogenous()) out.push_back(f.id);
  }
  return out;
}

std::vector<FactId> Database::Exogenous() const {
  std::vector<FactId> out;
  for (const Fact& f : facts_) {
    if (!f.endogenous()) out.push_back(f.id);
  }
  return out;
}

FactId Database::MaxEndogenousId() const {
  FactId out = 0;
  for (const Fact& f : facts_) {
    if (f.endogenous()) out = std::max(out, f.id);
  }
  return out;
}

Assignment::Assignment(std::initializer_list<FactId> ids) {
  for (FactId id : ids) Insert(id);
}

void Assignment::Insert(FactId id) {
  if (id >= bits_.size()) bits_.resize(id + 1);
  bits_.set(id);
}

void Assignment::Erase(FactId id) {
  if (id < bits_.size()) bits_.reset(id);
}

std::vector<FactId> Assignment::Members() const {
  std::vector<FactId> out;
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos;
       i = bits_.find_next(i)) {
    out.push_back(static_cast<FactId>(i));
  }
  return out;
}

bool Assignment::operator==(const Assignment& other) const {
  return Members() == other.Members();
}

DnfLineage::DnfLineage(DatabasePtr universe, std::vector<Monomial> monomials)
    : universe_(std::move(universe)), monomials_(std::move(monomials)) {
  if (!universe_) throw InputError("lineage needs a database");
  for (Monomial& m : monomials_) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    for (FactId id : m) {
      if (!universe_->Contains(id)) {
        throw InputError("monomial references unknown fact " +
                         std::to_string(id));
      }
    }
  }
}

DnfLineage DnfLineage::FixExogenous() const {
  std::vector<Monomial> fixed;
  fixed.reserve(monomials_.size());
  for (const Monomial& m : monomials_) {
    Monomial kept;
    for (FactId id : m) {
      if (universe_->IsEndogenous(id)) kept.push_back(id);
    }
    if (kept.empty()) return DnfLineage(universe_, {Monomial{}});
    fixed.push_back(std::move(kept));
  }
  return DnfLineage(universe_, std::move(fixed));
}

bool DnfLineage::IsExogenousFree() const {
  for (const Monomial& m : monomials_) {
    for (FactId id : m) {
      if (!universe_->IsEndogenous(id)) return false;
    }
  }
  return true;
}

bool DnfLineage::Evaluate(const Assignment& nu) const {
  for (const Monomial& m : monomials_) {
    if (std::all_of(m.begin(), m.end(),
                    [&](FactId id) { return nu.Contains(id); })) {
      return true;
    }
  }
  return false;
}

BooleanFunction DnfLineage::AsFunction() const {
  auto fixed = std::make_shared<DnfLineage>(FixExogenous());
  return BooleanFunction{
      universe_->Endogenous(),
      [fixed](const Assignment& nu) { return fixed->Evaluate(nu); }};
}

std::string KindName(FactKind kind) {
  return kind == FactKind::kEndogenous ? "endo" : "exo";
}

FactKind ParseKind(const std::string& text, const std::string& source,
                   std::size_t line) {
  if (text == "endo" || text == "endogenous") return FactKind::kEndogenous;
  if (text == "exo" || text == "exogenous") return FactKind::kExogenous;
  throw ParseError(source, line, "unknown fact kind '" + text + "'");
}

namespace {

// Yields non-blank lines with comments stripped, tracking line numbers.
class LineReader {
 public:
  LineReader(std::istream& in, std::string source)
      : in_(in), source_(std::move(source)) {}

  bool Next(std::string* line) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++number_;
      if (auto hash = raw.find('#'); hash != std::string::npos) {
        raw.resize(hash);
      }
      if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
      *line = raw;
      return true;
    }
    return false;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw ParseError(source_, number_, message);
  }

  std::size_t number() const { return number_; }
  const std::string& source() const { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t number_ = 0;
};

std::size_t ParseHeader(LineReader& reader, const std::string& keyword) {
  std::string line;
  if (!reader.Next(&line)) reader.Fail("expected '" + keyword + " <count>'");
  std::istringstream ss(line);
  std::string word;
  long long count = -1;
  std::string extra;
  if (!(ss >> word >> count) || word != keyword || count < 0 || (ss >> extra)) {
    reader.Fail("expected '" + keyword + " <count>'");
  }
  return static_cast<std::size_t>(count);
}

FactId ParseId(const std::string& token, const LineReader& reader) {
  std::size_t pos = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(token, &pos);
  } catch (const std::exception&) {
    reader.Fail("bad fact id '" + token + "'");
  }
  if (pos != token.size() || value == 0 || value > 0xffffffffUL) {
    reader.Fail("bad fact id '" + token + "'");
  }
  return static_cast<FactId>(value);
}

}  // namespace

DnfLineage ParseDnf(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  const std::size_t num_facts = ParseHeader(reader, "facts");
  std::vector<Fact> facts;
  std::string line;
  for (std::size_t i = 0; i < num_facts; ++i) {
    if (!reader.Next(&line)) reader.Fail("missing fact line");
    std::istringstream ss(line);
    std::string id_token, kind_token;
    if (!(ss >> id_token >> kind_token)) reader.Fail("expected '<id> <kind> <label>'");
    Fact fact;
    fact.id = ParseId(id_token, reader);
    fact.kind = ParseKind(kind_token, source, reader.number());
    std::getline(ss >> std::ws, fact.label);
    while (!fact.label.empty() &&
           (fact.label.back() == '\r' || fact.label.back() == ' ')) {
      fact.label.pop_back();
    }
    if (fact.label.empty()) fact.label = "f" + std::to_string(fact.id);
    facts.push_back(std::move(fact));
  }
  DatabasePtr db;
  try {
    db = std::make_shared<Database>(std::move(facts));
  } catch (const InputError& e) {
    reader.Fail(e.what());
  }
  const std::size_t num_monomials = ParseHeader(reader, "monomials");
  std::vector<DnfLineage::Monomial> monomials;
  for (std::size_t i = 0; i < num_monomials; ++i) {
    if (!reader.Next(&line)) reader.Fail("missing monomial line");
    std::istringstream ss(line);
    DnfLineage::Monomial m;
    std::string token;
    while (ss >> token) {
      const FactId id = ParseId(token, reader);
      if (!db->Contains(id)) {
        reader.Fail("monomial references unknown fact " + token);
      }
      m.push_back(id);
    }
    monomials.push_back(std::move(m));
  }
  if (reader.Next(&line)) reader.Fail("trailing content after monomials");
  return DnfLineage(std::move(db), std::move(monomials));
}

DnfLineage ReadDnfFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return ParseDnf(in, path);
}

std::string WriteDnf(const DnfLineage& lineage) {
  std::ostringstream out;
  const Database& db = lineage.database();
  out << "facts " << db.size() << "\n";
  for (const Fact& f : db.facts()) {
    out << f.id << " " << KindName(f.kind) << " " << f.label << "\n";
  }
  out << "monomials " << lineage.monomials().size() << "\n";
  for (const auto& m : lineage.monomials()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      out << (i ? " " : "") << m[i];
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace shapdb
