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

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "shapdb/ddnnf.h"
#include "shapdb/errors.h"

namespace shapdb {
namespace {

using ClauseList = std::vector<Clause>;

struct KeyHash {
  std::size_t operator()(const std::vector<int>& key) const {
    std::size_t h = key.size();
    for (int x : key) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

class Compiler {
 public:
  Compiler(const CnfFormula& cnf, const CompileOptions& options,
           CompileStats* stats)
      : options_(options), stats_(stats) {
    out_.vars() = cnf.vars;
    out_.set_determinism(Determinism::kTrusted);
    false_ = out_.AddFalse();
    true_ = out_.AddTrue();
    positive_.assign(cnf.num_vars() + 1, kNone);
    negative_.assign(cnf.num_vars() + 1, kNone);
  }

  Ddnnf Run(const ClauseList& clauses) {
    const NodeId root = CompileSet(clauses);
    out_.SetRoot(root);
    return std::move(out_);
  }

 private:
  static constexpr NodeId kNone = static_cast<NodeId>(-1);

  NodeId Emit(NnfNode node) {
    if (out_.size() >= options_.node_budget) {
      throw BudgetExhaustedError("compilation budget exhausted after " +
                                 std::to_string(out_.size()) + " nodes");
    }
    return out_.AddNode(std::move(node));
  }

  NodeId Lit(Literal l) {
    NodeId& slot = l > 0 ? positive_[l] : negative_[-l];
    if (slot == kNone) slot = Emit(NnfNode{NnfKind::kLit, l, 0, {}});
    return slot;
  }

  NodeId And(std::vector<NodeId> children) {
    if (children.empty()) return true_;
    if (children.size() == 1) return children.front();
    return Emit(NnfNode{NnfKind::kAnd, 0, 0, std::move(children)});
  }

  // Clauses of `clauses` under literal l: satisfied clauses dropped, -l
  // removed from the rest.
  static ClauseList Condition(const ClauseList& clauses, Literal l) {
    ClauseList out;
    out.reserve(clauses.size());
    for (const Clause& c : clauses) {
      if (std::find(c.begin(), c.end(), l) != c.end()) continue;
      Clause reduced;
      reduced.reserve(c.size());
      for (Literal x : c) {
        if (x != -l) reduced.push_back(x);
      }
      out.push_back(std::move(reduced));
    }
    return out;
  }

  // Unit propagation in place. Returns false on conflict.
  static bool Propagate(ClauseList* clauses, std::vector<Literal>* implied) {
    for (;;) {
      Literal unit = 0;
      for (const Clause& c : *clauses) {
        if (c.empty()) return false;
        if (c.size() == 1) {
          unit = c.front();
          break;
        }
      }
      if (unit == 0) return true;
      implied->push_back(unit);
      *clauses = Condition(*clauses, unit);
    }
  }

  NodeId CompileSet(ClauseList clauses) {
    if (options_.deadline != nullptr) options_.deadline->Poll("compilation");
    std::vector<Literal> implied;
    if (!Propagate(&clauses, &implied)) return false_;
    std::vector<NodeId> children;
    std::sort(implied.begin(), implied.end(),
              [](Literal a, Literal b) { return VarOf(a) < VarOf(b); });
    for (Literal l : implied) children.push_back(Lit(l));
    if (!clauses.empty()) {
      for (ClauseList& component : Components(std::move(clauses))) {
        const NodeId sub = CompileComponent(std::move(component));
        if (sub == false_) return false_;
        children.push_back(sub);
      }
    }
    return And(std::move(children));
  }

  std::vector<ClauseList> Components(ClauseList clauses) {
    std::vector<int> vars;
    for (const Clause& c : clauses) {
      for (Literal l : c) vars.push_back(VarOf(l));
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    auto index = [&](int v) {
      return static_cast<std::size_t>(
          std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
    };
    std::vector<std::size_t> parent(vars.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Clause& c : clauses) {
      const std::size_t first = find(index(VarOf(c.front())));
      for (Literal l : c) {
        const std::size_t r = find(index(VarOf(l)));
        if (r != first) parent[r] = first;
      }
    }
    // Components ordered by their lowest variable.
    std::vector<long> slot(vars.size(), -1);
    std::vector<ClauseList> out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const std::size_t r = find(i);
      if (slot[r] < 0) {
        slot[r] = static_cast<long>(out.size());
        out.emplace_back();
      }
    }
    for (Clause& c : clauses) {
      out[slot[find(index(VarOf(c.front())))]].push_back(std::move(c));
    }
    if (stats_ != nullptr && out.size() > 1) stats_->components += out.size();
    return out;
  }

  NodeId CompileComponent(ClauseList clauses) {
    for (Clause& c : clauses) std::sort(c.begin(), c.end());
    std::sort(clauses.begin(), clauses.end());
    clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
    std::vector<int> key;
    for (const Clause& c : clauses) {
      key.insert(key.end(), c.begin(), c.end());
      key.push_back(0);
    }
    if (auto it = cache_.find(key); it != cache_.end()) {
      if (stats_ != nullptr) ++stats_->cache_hits;
      return it->second;
    }

    std::unordered_map<int, std::size_t> frequency;
    for (const Clause& c : clauses) {
      for (Literal l : c) ++frequency[VarOf(l)];
    }
    int branch = 0;
    std::size_t best = 0;
    for (const auto& [var, count] : frequency) {
      if (count > best || (count == best && var < branch)) {
        branch = var;
        best = count;
      }
    }
    if (stats_ != nullptr) ++stats_->decisions;

    const NodeId high = CompileSet(Condition(clauses, branch));
    const NodeId low = CompileSet(Condition(clauses, -branch));
    std::vector<NodeId> arms;
    if (high != false_) arms.push_back(And({Lit(branch), high}));
    if (low != false_) arms.push_back(And({Lit(-branch), low}));
    NodeId result = false_;
    if (arms.size() == 1) {
      result = arms.front();
    } else if (arms.size() == 2) {
      result = Emit(NnfNode{NnfKind::kOr, 0, branch, std::move(arms)});
    }
    cache_.emplace(std::move(key), result);
    return result;
  }

  CompileOptions options_;
  CompileStats* stats_;
  Ddnnf out_;
  NodeId false_ = 0;
  NodeId true_ = 0;
  std::vector<NodeId> positive_;
  std::vector<NodeId> negative_;
  std::unordered_map<std::vector<int>, NodeId, KeyHash> cache_;
};

}  // namespace

Ddnnf Compile(const CnfFormula& cnf, const CompileOptions& options,
              CompileStats* stats) {
  for (const Clause& c : cnf.clauses) {
    for (Literal l : c) {
      if (l == 0 || VarOf(l) > cnf.num_vars()) {
        throw InputError("clause literal " + std::to_string(l) +
                         " is out of range");
      }
    }
  }
  Compiler compiler(cnf, options, stats);
  return compiler.Run(cnf.clauses);
}

}  // namespace shapdb
