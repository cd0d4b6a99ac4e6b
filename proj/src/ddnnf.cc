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

#include "shapdb/ddnnf.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <boost/dynamic_bitset.hpp>

#include "shapdb/errors.h"

namespace shapdb {

NodeId Ddnnf::AddNode(NnfNode node) {
  const auto id = static_cast<NodeId>(nodes_.size());
  if (node.kind == NnfKind::kLit) {
    if (node.literal == 0) throw InputError("literal 0 is not a variable");
    node.children.clear();
    if (VarOf(node.literal) > vars_.num_vars()) vars_.Resize(VarOf(node.literal));
  }
  for (NodeId c : node.children) {
    if (c >= id) {
      throw InputError("node " + std::to_string(id) + " references node " +
                       std::to_string(c) + " that is not earlier");
    }
  }
  nodes_.push_back(std::move(node));
  root_ = id;
  return id;
}

NodeId Ddnnf::AddLiteral(Literal literal) {
  return AddNode(NnfNode{NnfKind::kLit, literal, 0, {}});
}
NodeId Ddnnf::AddAnd(std::vector<NodeId> children) {
  return AddNode(NnfNode{NnfKind::kAnd, 0, 0, std::move(children)});
}
NodeId Ddnnf::AddOr(std::vector<NodeId> children, int decision) {
  return AddNode(NnfNode{NnfKind::kOr, 0, decision, std::move(children)});
}

void Ddnnf::SetRoot(NodeId root) {
  if (root >= nodes_.size()) throw InputError("root node does not exist");
  root_ = root;
}

std::size_t Ddnnf::EdgeCount() const {
  std::size_t edges = 0;
  for (const NnfNode& n : nodes_) edges += n.children.size();
  return edges;
}

bool Ddnnf::IsTrue(NodeId id) const {
  const NnfNode& n = nodes_.at(id);
  return n.kind == NnfKind::kAnd && n.children.empty();
}

bool Ddnnf::IsFalse(NodeId id) const {
  const NnfNode& n = nodes_.at(id);
  return n.kind == NnfKind::kOr && n.children.empty();
}

bool Ddnnf::Evaluate(const std::vector<char>& values) const {
  if (nodes_.empty()) throw InputError("empty d-DNNF");
  std::vector<char> v(nodes_.size(), 0);
  for (std::size_t i = 0; i <= root_; ++i) {
    const NnfNode& n = nodes_[i];
    switch (n.kind) {
      case NnfKind::kLit:
        v[i] = (values.at(VarOf(n.literal)) != 0) == (n.literal > 0);
        break;
      case NnfKind::kAnd:
        v[i] = std::all_of(n.children.begin(), n.children.end(),
                           [&](NodeId c) { return v[c] != 0; });
        break;
      case NnfKind::kOr:
        v[i] = std::any_of(n.children.begin(), n.children.end(),
                           [&](NodeId c) { return v[c] != 0; });
        break;
    }
  }
  return v[root_] != 0;
}

Ddnnf PurgeTseytin(const Ddnnf& compiled) {
  return PurgeTseytin(compiled, compiled.vars().AuxiliaryVars());
}

Ddnnf PurgeTseytin(const Ddnnf& compiled, const std::vector<int>& auxiliary) {
  if (compiled.empty()) throw InputError("empty d-DNNF");
  const std::unordered_set<int> aux(auxiliary.begin(), auxiliary.end());
  const std::size_t n = compiled.size();

  // (a) satisfiability, bottom-up.
  std::vector<char> sat(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const NnfNode& node = compiled.node(static_cast<NodeId>(i));
    switch (node.kind) {
      case NnfKind::kLit:
        sat[i] = 1;
        break;
      case NnfKind::kAnd:
        sat[i] = std::all_of(node.children.begin(), node.children.end(),
                             [&](NodeId c) { return sat[c] != 0; });
        break;
      case NnfKind::kOr:
        sat[i] = std::any_of(node.children.begin(), node.children.end(),
                             [&](NodeId c) { return sat[c] != 0; });
        break;
    }
  }

  Ddnnf out;
  out.vars() = compiled.vars();
  out.set_determinism(compiled.determinism());
  const NodeId root = compiled.root();
  if (!sat[root]) {
    out.AddFalse();
    return out;
  }

  // (b) reachability from the root through satisfiable nodes.
  std::vector<char> live(n, 0);
  live[root] = 1;
  for (std::size_t i = root + 1; i-- > 0;) {
    if (!live[i]) continue;
    for (NodeId c : compiled.node(static_cast<NodeId>(i)).children) {
      if (sat[c]) live[c] = 1;
    }
  }

  // (c) rebuild, auxiliary literals becoming true.
  std::vector<NodeId> remap(n, 0);
  for (std::size_t i = 0; i <= root; ++i) {
    if (!live[i]) continue;
    const NnfNode& node = compiled.node(static_cast<NodeId>(i));
    NnfNode copy;
    copy.kind = node.kind;
    if (node.kind == NnfKind::kLit) {
      if (aux.count(VarOf(node.literal))) {
        copy.kind = NnfKind::kAnd;
      } else {
        copy.literal = node.literal;
      }
    } else {
      copy.decision = aux.count(node.decision) ? 0 : node.decision;
      for (NodeId c : node.children) {
        if (sat[c]) copy.children.push_back(remap[c]);
      }
    }
    remap[i] = out.AddNode(std::move(copy));
  }
  out.SetRoot(remap[root]);
  return out;
}

namespace {

class NnfReader {
 public:
  NnfReader(std::istream& in, std::string source)
      : in_(in), source_(std::move(source)) {}

  bool Next(std::istringstream* ss) {
    std::string line;
    while (std::getline(in_, line)) {
      ++number_;
      std::istringstream probe(line);
      std::string first;
      if (!(probe >> first) || first == "c") continue;
      ss->clear();
      ss->str(line);
      return true;
    }
    return false;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw ParseError(source_, number_, message);
  }

  long ReadInt(std::istringstream& ss, const char* what) const {
    std::string token;
    if (!(ss >> token)) Fail(std::string("missing ") + what);
    std::size_t pos = 0;
    long value = 0;
    try {
      value = std::stol(token, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != token.size()) {
      Fail(std::string("bad ") + what + " '" + token + "'");
    }
    return value;
  }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t number_ = 0;
};

}  // namespace

Ddnnf ParseNnf(std::istream& in, const std::string& source) {
  NnfReader reader(in, source);
  std::istringstream ss;
  if (!reader.Next(&ss)) reader.Fail("missing 'nnf' header");
  std::string word;
  ss >> word;
  if (word != "nnf") reader.Fail("expected 'nnf <nodes> <edges> <vars>'");
  const long num_nodes = reader.ReadInt(ss, "node count");
  const long num_edges = reader.ReadInt(ss, "edge count");
  const long num_vars = reader.ReadInt(ss, "variable count");
  if (num_nodes < 0 || num_edges < 0 || num_vars < 0) {
    reader.Fail("negative count in header");
  }
  Ddnnf out;
  out.vars().Resize(static_cast<int>(num_vars));
  for (int v = 1; v <= num_vars; ++v) out.vars().SetAuxiliary(v);
  out.set_determinism(Determinism::kTrusted);
  for (long i = 0; i < num_nodes; ++i) {
    if (!reader.Next(&ss)) reader.Fail("expected " + std::to_string(num_nodes) +
                                       " nodes, found " + std::to_string(i));
    std::string kind;
    ss >> kind;
    NnfNode node;
    long children = 0;
    if (kind == "L") {
      node.kind = NnfKind::kLit;
      const long lit = reader.ReadInt(ss, "literal");
      if (lit == 0 || std::labs(lit) > num_vars) {
        reader.Fail("literal out of range");
      }
      node.literal = static_cast<Literal>(lit);
    } else if (kind == "A") {
      node.kind = NnfKind::kAnd;
      children = reader.ReadInt(ss, "child count");
    } else if (kind == "O") {
      node.kind = NnfKind::kOr;
      const long decision = reader.ReadInt(ss, "decision variable");
      if (decision < 0 || decision > num_vars) {
        reader.Fail("decision variable out of range");
      }
      node.decision = static_cast<int>(decision);
      children = reader.ReadInt(ss, "child count");
    } else {
      reader.Fail("unknown node kind '" + kind + "'");
    }
    if (children < 0) reader.Fail("negative child count");
    for (long c = 0; c < children; ++c) {
      const long child = reader.ReadInt(ss, "child index");
      if (child < 0 || child >= i) {
        reader.Fail("child index " + std::to_string(child) +
                    " does not refer to an earlier node");
      }
      node.children.push_back(static_cast<NodeId>(child));
    }
    std::string extra;
    if (ss >> extra) reader.Fail("trailing token '" + extra + "'");
    out.AddNode(std::move(node));
  }
  if (reader.Next(&ss)) reader.Fail("more nodes than declared in header");
  if (num_nodes == 0) reader.Fail("empty d-DNNF");
  if (out.EdgeCount() != static_cast<std::size_t>(num_edges)) {
    reader.Fail("header declares " + std::to_string(num_edges) +
                " edges, found " + std::to_string(out.EdgeCount()));
  }
  return out;
}

Ddnnf ReadNnfFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return ParseNnf(in, path);
}

std::string WriteNnf(const Ddnnf& ddnnf) {
  if (ddnnf.empty()) throw InputError("empty d-DNNF");
  // The format has no root marker: emit exactly the nodes up to the root.
  const std::size_t count = ddnnf.root() + 1;
  std::size_t edges = 0;
  for (std::size_t i = 0; i < count; ++i) {
    edges += ddnnf.node(static_cast<NodeId>(i)).children.size();
  }
  std::ostringstream out;
  out << "nnf " << count << " " << edges << " " << ddnnf.vars().num_vars()
      << "\n";
  for (std::size_t i = 0; i < count; ++i) {
    const NnfNode& n = ddnnf.node(static_cast<NodeId>(i));
    switch (n.kind) {
      case NnfKind::kLit:
        out << "L " << n.literal;
        break;
      case NnfKind::kAnd:
        out << "A " << n.children.size();
        break;
      case NnfKind::kOr:
        out << "O " << n.decision << " " << n.children.size();
        break;
    }
    for (NodeId c : n.children) out << " " << c;
    out << "\n";
  }
  return out.str();
}

BooleanCircuit ToCircuit(const Ddnnf& ddnnf, DatabasePtr universe) {
  if (ddnnf.empty()) throw InputError("empty d-DNNF");
  BooleanCircuit out(universe);
  out.set_determinism(ddnnf.determinism());
  std::unordered_map<int, GateId> var_gate;
  std::vector<GateId> remap(ddnnf.root() + 1, 0);
  for (std::size_t i = 0; i <= ddnnf.root(); ++i) {
    const NnfNode& n = ddnnf.node(static_cast<NodeId>(i));
    switch (n.kind) {
      case NnfKind::kLit: {
        const int v = VarOf(n.literal);
        if (!universe->Contains(static_cast<FactId>(v))) {
          throw PreconditionError("d-DNNF literal on variable " +
                                  std::to_string(v) +
                                  " which is not a fact (unpurged auxiliary?)");
        }
        auto it = var_gate.find(v);
        if (it == var_gate.end()) {
          it = var_gate.emplace(v, out.AddVar(static_cast<FactId>(v))).first;
        }
        remap[i] = n.literal > 0 ? it->second : out.AddNot(it->second);
        break;
      }
      case NnfKind::kAnd:
      case NnfKind::kOr: {
        std::vector<GateId> inputs;
        for (NodeId c : n.children) inputs.push_back(remap[c]);
        if (inputs.empty()) {
          remap[i] = n.kind == NnfKind::kAnd ? out.AddTrue() : out.AddFalse();
        } else {
          remap[i] = n.kind == NnfKind::kAnd ? out.AddAnd(std::move(inputs))
                                             : out.AddOr(std::move(inputs));
        }
        break;
      }
    }
  }
  out.SetOutput(remap[ddnnf.root()]);
  return out;
}

BigInt CountModels(const Ddnnf& ddnnf, const std::vector<int>& over) {
  if (ddnnf.empty()) throw InputError("empty d-DNNF");
  int width = ddnnf.vars().num_vars();
  for (int v : over) width = std::max(width, v);
  std::vector<boost::dynamic_bitset<>> vars;
  std::vector<BigInt> count;
  vars.reserve(ddnnf.size());
  count.reserve(ddnnf.size());
  for (std::size_t i = 0; i <= ddnnf.root(); ++i) {
    const NnfNode& n = ddnnf.node(static_cast<NodeId>(i));
    boost::dynamic_bitset<> bits(width + 1);
    BigInt c;
    switch (n.kind) {
      case NnfKind::kLit:
        bits.set(VarOf(n.literal));
        c = 1;
        break;
      case NnfKind::kAnd:
        c = 1;
        for (NodeId ch : n.children) {
          bits |= vars[ch];
          c *= count[ch];
        }
        break;
      case NnfKind::kOr: {
        for (NodeId ch : n.children) bits |= vars[ch];
        c = 0;
        const std::size_t total = bits.count();
        for (NodeId ch : n.children) {
          BigInt term = count[ch];
          mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(),
                       total - vars[ch].count());
          c += term;
        }
        break;
      }
    }
    vars.push_back(std::move(bits));
    count.push_back(std::move(c));
  }
  boost::dynamic_bitset<> domain(width + 1);
  for (int v : over) domain.set(v);
  const auto& root_vars = vars[ddnnf.root()];
  if (!root_vars.is_subset_of(domain)) {
    throw InputError("model count domain misses variables of the d-DNNF");
  }
  BigInt out = count[ddnnf.root()];
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(),
               domain.count() - root_vars.count());
  return out;
}

}  // namespace shapdb
