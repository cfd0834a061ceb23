#pragma once

// Certified dec-DNNF circuits: representation, structural validation and
// evaluation semantics.
//
// Nodes live in a flat array and are numbered topologically: every child has a
// smaller index than its parent. Decision nodes carry a 0-edge (lo) and a
// 1-edge (hi). 0-sinks carry a 1-based clause index into the CNF the circuit
// certifies.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "kcps/cnf.hpp"
#include "kcps/var_set.hpp"

namespace kcps {

struct NodeId {
  std::uint32_t index = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint32_t i) : index(i) {}
  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

struct TrueSink {
  friend bool operator==(const TrueSink&, const TrueSink&) = default;
};
struct FalseSink {
  std::size_t clause_ref = 0;
  friend bool operator==(const FalseSink&, const FalseSink&) = default;
};
struct Decision {
  Variable var;
  NodeId lo;
  NodeId hi;
  friend bool operator==(const Decision&, const Decision&) = default;
};
struct AndNode {
  NodeId left;
  NodeId right;
  friend bool operator==(const AndNode&, const AndNode&) = default;
};

using Node = std::variant<TrueSink, FalseSink, Decision, AndNode>;

inline bool is_sink(const Node& n) {
  return std::holds_alternative<TrueSink>(n) || std::holds_alternative<FalseSink>(n);
}

/// Children of a node, in edge order (lo, hi) or (left, right).
inline std::vector<NodeId> children(const Node& n) {
  if (auto* d = std::get_if<Decision>(&n)) return {d->lo, d->hi};
  if (auto* a = std::get_if<AndNode>(&n)) return {a->left, a->right};
  return {};
}

class CertifiedDnnf {
public:
  CertifiedDnnf() = default;
  /// No structural checks are made here; see validate_structure().
  CertifiedDnnf(std::vector<Node> nodes, NodeId source, std::uint32_t num_vars,
                std::size_t num_clauses)
      : nodes_(std::move(nodes)), source_(source), num_vars_(num_vars),
        num_clauses_(num_clauses) {}

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id.index); }
  std::size_t num_nodes() const { return nodes_.size(); }
  NodeId source() const { return source_; }
  std::uint32_t num_vars() const { return num_vars_; }
  /// Clause count of the CNF the 0-sink labels index into.
  std::size_t num_clauses() const { return num_clauses_; }

  friend bool operator==(const CertifiedDnnf&, const CertifiedDnnf&) = default;

private:
  std::vector<Node> nodes_;
  NodeId source_;
  std::uint32_t num_vars_ = 0;
  std::size_t num_clauses_ = 0;
};

/// Append-only construction helper. The last node added becomes the source.
class DnnfBuilder {
public:
  DnnfBuilder(std::uint32_t num_vars, std::size_t num_clauses)
      : num_vars_(num_vars), num_clauses_(num_clauses) {}

  NodeId add(Node n) {
    nodes_.push_back(std::move(n));
    return NodeId(static_cast<std::uint32_t>(nodes_.size() - 1));
  }
  NodeId add_true() { return add(TrueSink{}); }
  NodeId add_false(std::size_t clause_ref) { return add(FalseSink{clause_ref}); }
  NodeId add_decision(Variable v, NodeId lo, NodeId hi) { return add(Decision{v, lo, hi}); }
  NodeId add_decision(std::uint32_t v, NodeId lo, NodeId hi) {
    return add(Decision{Variable(v), lo, hi});
  }
  NodeId add_and(NodeId l, NodeId r) { return add(AndNode{l, r}); }

  std::size_t size() const { return nodes_.size(); }

  CertifiedDnnf build() && {
    NodeId src(nodes_.empty() ? 0 : static_cast<std::uint32_t>(nodes_.size() - 1));
    return CertifiedDnnf(std::move(nodes_), src, num_vars_, num_clauses_);
  }
  CertifiedDnnf build(NodeId source) && {
    return CertifiedDnnf(std::move(nodes_), source, num_vars_, num_clauses_);
  }

private:
  std::uint32_t num_vars_;
  std::size_t num_clauses_;
  std::vector<Node> nodes_;
};

// ---------------------------------------------------------------------------
// Variable sets

enum class StructureErrc {
  NotSingleSource,
  Unreachable,
  ReadOnceViolation,
  DecomposabilityViolation,
  BadTopologicalOrder,
  VariableOutOfRange,
};

inline const char* to_string(StructureErrc k) {
  switch (k) {
    case StructureErrc::NotSingleSource: return "NotSingleSource";
    case StructureErrc::Unreachable: return "Unreachable";
    case StructureErrc::ReadOnceViolation: return "ReadOnceViolation";
    case StructureErrc::DecomposabilityViolation: return "DecomposabilityViolation";
    case StructureErrc::BadTopologicalOrder: return "BadTopologicalOrder";
    case StructureErrc::VariableOutOfRange: return "VariableOutOfRange";
  }
  return "?";
}

class StructureError : public std::runtime_error {
public:
  StructureError(StructureErrc kind, NodeId node, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " at node " +
                           std::to_string(node.index) + ": " + what),
        kind_(kind), node_(node) {}
  StructureErrc kind() const { return kind_; }
  NodeId node() const { return node_; }

private:
  StructureErrc kind_;
  NodeId node_;
};

/// vars(D(alpha)) for every node alpha.
class VarSetTable {
public:
  VarSetTable() = default;
  explicit VarSetTable(std::vector<VarSet> sets) : sets_(std::move(sets)) {
    counts_.reserve(sets_.size());
    for (const auto& s : sets_) counts_.push_back(s.count());
  }
  const VarSet& operator[](NodeId id) const { return sets_[id.index]; }
  /// |vars(D(alpha))|
  std::size_t count(NodeId id) const { return counts_[id.index]; }
  std::size_t size() const { return sets_.size(); }

private:
  std::vector<VarSet> sets_;
  std::vector<std::size_t> counts_;
};

namespace detail {

inline std::optional<StructureErrc> local_defect(const CertifiedDnnf& d, std::uint32_t i) {
  const Node& n = d.nodes()[i];
  for (NodeId c : children(n))
    if (c.index >= i) return StructureErrc::BadTopologicalOrder;
  if (auto* dec = std::get_if<Decision>(&n))
    if (dec->var.index == 0 || dec->var.index > d.num_vars())
      return StructureErrc::VariableOutOfRange;
  return std::nullopt;
}

}  // namespace detail

/// Bottom-up var-set computation. Throws StructureError on a non-topological
/// child reference or a decision variable outside 1..num_vars.
inline VarSetTable compute_var_sets(const CertifiedDnnf& d) {
  std::vector<VarSet> sets;
  sets.reserve(d.num_nodes());
  for (std::uint32_t i = 0; i < d.num_nodes(); ++i) {
    if (auto defect = detail::local_defect(d, i))
      throw StructureError(*defect, NodeId(i), "cannot compute variable sets");
    VarSet s(d.num_vars());
    const Node& n = d.nodes()[i];
    if (auto* dec = std::get_if<Decision>(&n)) {
      s.insert(dec->var);
      s |= sets[dec->lo.index];
      s |= sets[dec->hi.index];
    } else if (auto* a = std::get_if<AndNode>(&n)) {
      s |= sets[a->left.index];
      s |= sets[a->right.index];
    }
    sets.push_back(std::move(s));
  }
  return VarSetTable(std::move(sets));
}

struct StructureViolation {
  StructureErrc kind;
  NodeId node;
  std::optional<Variable> variable;

  friend bool operator==(const StructureViolation&, const StructureViolation&) = default;
};

struct StructureReport {
  std::vector<StructureViolation> violations;
  bool valid() const { return violations.empty(); }
};

inline std::string describe(const StructureViolation& v) {
  std::string s = std::string(to_string(v.kind)) + " node " + std::to_string(v.node.index);
  if (v.variable) s += " var " + std::to_string(v.variable->index);
  return s;
}

inline StructureReport validate_structure(const CertifiedDnnf& d) {
  StructureReport r;
  const auto n = static_cast<std::uint32_t>(d.num_nodes());
  auto in_range = [n](NodeId id) { return id.index < n; };

  bool local_ok = true;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (auto defect = detail::local_defect(d, i)) {
      std::optional<Variable> var;
      if (auto* dec = std::get_if<Decision>(&d.nodes()[i])) var = dec->var;
      r.violations.push_back({*defect, NodeId(i),
                              *defect == StructureErrc::VariableOutOfRange ? var : std::nullopt});
      local_ok = false;
    }
  }

  // Single source and reachability.
  std::vector<std::uint32_t> indegree(n, 0);
  for (const auto& node : d.nodes())
    for (NodeId c : children(node))
      if (in_range(c)) ++indegree[c.index];
  if (!in_range(d.source()) || indegree[d.source().index] != 0)
    r.violations.push_back({StructureErrc::NotSingleSource, d.source(), std::nullopt});
  for (std::uint32_t i = 0; i < n; ++i)
    if (indegree[i] == 0 && NodeId(i) != d.source())
      r.violations.push_back({StructureErrc::NotSingleSource, NodeId(i), std::nullopt});

  std::vector<char> seen(n, 0);
  if (in_range(d.source())) {
    std::vector<NodeId> stack{d.source()};
    seen[d.source().index] = 1;
    while (!stack.empty()) {
      NodeId cur = stack.back();
      stack.pop_back();
      for (NodeId c : children(d.nodes()[cur.index]))
        if (in_range(c) && !seen[c.index]) {
          seen[c.index] = 1;
          stack.push_back(c);
        }
    }
  }
  for (std::uint32_t i = 0; i < n; ++i)
    if (!seen[i]) r.violations.push_back({StructureErrc::Unreachable, NodeId(i), std::nullopt});

  if (!local_ok) return r;

  // Read-once via the subtree criterion, decomposability via disjointness.
  VarSetTable vars = compute_var_sets(d);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Node& node = d.nodes()[i];
    if (auto* dec = std::get_if<Decision>(&node)) {
      if (vars[dec->lo].contains(dec->var) || vars[dec->hi].contains(dec->var))
        r.violations.push_back({StructureErrc::ReadOnceViolation, NodeId(i), dec->var});
    } else if (auto* a = std::get_if<AndNode>(&node)) {
      if (auto shared = vars[a->left].first_common(vars[a->right]))
        r.violations.push_back({StructureErrc::DecomposabilityViolation, NodeId(i), shared});
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Semantics

/// Bottom-up evaluation under a total assignment.
inline bool evaluate(const CertifiedDnnf& d, const Assignment& t) {
  std::vector<char> val(d.source().index + 1, 0);
  for (std::uint32_t i = 0; i <= d.source().index; ++i) {
    const Node& n = d.nodes()[i];
    if (std::holds_alternative<TrueSink>(n)) {
      val[i] = 1;
    } else if (auto* dec = std::get_if<Decision>(&n)) {
      val[i] = val[(t[dec->var] ? dec->hi : dec->lo).index];
    } else if (auto* a = std::get_if<AndNode>(&n)) {
      val[i] = val[a->left.index] && val[a->right.index];
    }
  }
  return val[d.source().index] != 0;
}

/// Sinks reachable from the source along paths compatible with t, ascending.
inline std::vector<NodeId> compatible_paths_reach_only(const CertifiedDnnf& d, const Assignment& t) {
  std::vector<char> seen(d.num_nodes(), 0);
  std::vector<NodeId> stack{d.source()}, sinks;
  seen[d.source().index] = 1;
  auto visit = [&](NodeId c) {
    if (!seen[c.index]) {
      seen[c.index] = 1;
      stack.push_back(c);
    }
  };
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    const Node& n = d.node(cur);
    if (auto* dec = std::get_if<Decision>(&n)) {
      visit(t[dec->var] ? dec->hi : dec->lo);
    } else if (auto* a = std::get_if<AndNode>(&n)) {
      visit(a->left);
      visit(a->right);
    } else {
      sinks.push_back(cur);
    }
  }
  std::sort(sinks.begin(), sinks.end());
  return sinks;
}

/// Number of edges.
inline std::size_t size(const CertifiedDnnf& d) {
  std::size_t edges = 0;
  for (const auto& n : d.nodes())
    if (!is_sink(n)) edges += 2;
  return edges;
}

}  // namespace kcps
