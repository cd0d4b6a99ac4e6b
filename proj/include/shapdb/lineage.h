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

// Facts, databases, assignments and monotone DNF lineage.

#ifndef SHAPDB_LINEAGE_H_
#define SHAPDB_LINEAGE_H_

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace shapdb {

using FactId = std::uint32_t;

enum class FactKind { kExogenous, kEndogenous };

struct Fact {
  FactId id = 0;
  std::string label;
  FactKind kind = FactKind::kEndogenous;

  bool endogenous() const { return kind == FactKind::kEndogenous; }
};

// A set of facts partitioned into exogenous and endogenous ones. Ids are
// unique and >= 1; facts are kept sorted by id.
class Database {
 public:
  Database() = default;
  explicit Database(std::vector<Fact> facts);

  const std::vector<Fact>& facts() const { return facts_; }
  std::size_t size() const { return facts_.size(); }

  bool Contains(FactId id) const { return index_.count(id) > 0; }
  const Fact& Get(FactId id) const;
  bool IsEndogenous(FactId id) const;

  // Sorted ids of D_n and D_x.
  std::vector<FactId> Endogenous() const;
  std::vector<FactId> Exogenous() const;

  FactId MaxId() const { return facts_.empty() ? 0 : facts_.back().id; }
  FactId MaxEndogenousId() const;

 private:
  std::vector<Fact> facts_;
  std::unordered_map<FactId, std::size_t> index_;
};

using DatabasePtr = std::shared_ptr<const Database>;

// A set of present facts, indexed by fact id.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<FactId> ids);

  bool Contains(FactId id) const { return id < bits_.size() && bits_[id]; }
  void Insert(FactId id);
  void Erase(FactId id);
  void Set(FactId id, bool present) {
    if (present) {
      Insert(id);
    } else {
      Erase(id);
    }
  }
  std::size_t Count() const { return bits_.count(); }
  std::vector<FactId> Members() const;

  bool operator==(const Assignment& other) const;

 private:
  boost::dynamic_bitset<> bits_;
};

// A Boolean function over a fixed list of endogenous facts (the players).
// `eval` only looks at the membership of `variables` in its argument.
struct BooleanFunction {
  std::vector<FactId> variables;
  std::function<bool(const Assignment&)> eval;

  bool operator()(const Assignment& nu) const { return eval(nu); }
};

// Lineage as a disjunction of conjunctions of positive facts.
class DnfLineage {
 public:
  using Monomial = std::vector<FactId>;

  DnfLineage(DatabasePtr universe, std::vector<Monomial> monomials);

  const Database& database() const { return *universe_; }
  const DatabasePtr& database_ptr() const { return universe_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }

  // Sets every exogenous fact to true: exogenous ids are dropped from the
  // monomials. A monomial emptied this way makes the lineage constant true.
  DnfLineage FixExogenous() const;

  bool IsExogenousFree() const;

  // True iff some monomial is contained in nu. Expects exogenous-free input.
  bool Evaluate(const Assignment& nu) const;

  // Endogenous lineage as a function over D_n (exogenous facts fixed to 1).
  BooleanFunction AsFunction() const;

 private:
  DatabasePtr universe_;
  std::vector<Monomial> monomials_;
};

// Text format:
//   facts N
//   <id> <endo|exo> <label...>      (N lines)
//   monomials M
//   <id> <id> ...                   (M lines)
// Blank lines and '#' comments are ignored.
DnfLineage ParseDnf(std::istream& in, const std::string& source = "");
DnfLineage ReadDnfFile(const std::string& path);
std::string WriteDnf(const DnfLineage& lineage);

// Shared by the text formats that embed a fact table.
std::string KindName(FactKind kind);
FactKind ParseKind(const std::string& text, const std::string& source,
                   std::size_t line);

}  // namespace shapdb

#endif  // SHAPDB_LINEAGE_H_
