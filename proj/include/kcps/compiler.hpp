#pragma once

// Proof-producing exhaustive DPLL. The search tree is emitted as a certified
// dec-DNNF: branching gives decision nodes, independent components give
// decomposable and-nodes, a violated clause gives a 0-sink labeled with that
// clause, and an empty residual gives the 1-sink.
//
// No unit propagation and no learning: every tested variable occurs in an
// active clause at the time it is tested.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "kcps/cnf.hpp"
#include "kcps/dnnf.hpp"

namespace kcps {

enum class BranchPolicy { MostFrequent, SmallestIndex };

struct CompileOptions {
  BranchPolicy branching = BranchPolicy::MostFrequent;
  bool caching = false;
};

struct ResidualClause {
  /// 1-based index into the original formula.
  std::size_t index;
  /// Literals not yet falsified. Empty means the clause is violated.
  std::vector<Literal> remaining;
  friend bool operator==(const ResidualClause&, const ResidualClause&) = default;
};

/// The active (unsatisfied) clauses of a formula under a partial assignment.
class ResidualFormula {
public:
  ResidualFormula() = default;

  static ResidualFormula from(const CnfFormula& f) {
    ResidualFormula r;
    r.assignment_.assign(f.num_vars() + 1, -1);
    for (std::size_t i = 0; i < f.num_clauses(); ++i)
      r.clauses_.push_back({i + 1, f.clauses()[i].literals()});
    return r;
  }

  const std::vector<ResidualClause>& clauses() const { return clauses_; }
  /// -1 unassigned, else 0/1; indexed by variable.
  const std::vector<std::int8_t>& assignment() const { return assignment_; }
  std::uint32_t num_vars() const { return static_cast<std::uint32_t>(assignment_.size() - 1); }

  /// Lowest-index clause with every literal falsified.
  std::optional<std::size_t> violated_clause() const {
    std::optional<std::size_t> best;
    for (const auto& c : clauses_)
      if (c.remaining.empty() && (!best || c.index < *best)) best = c.index;
    return best;
  }

  /// Unassigned variables occurring in active clauses, ascending.
  std::vector<Variable> variables() const {
    std::vector<Variable> vs;
    for (const auto& c : clauses_)
      for (Literal l : c.remaining) vs.push_back(l.var);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  ResidualFormula assign(Variable x, bool value) const {
    ResidualFormula r;
    r.assignment_ = assignment_;
    r.assignment_[x.index] = value ? 1 : 0;
    for (const auto& c : clauses_) {
      bool satisfied = false;
      ResidualClause next{c.index, {}};
      for (Literal l : c.remaining) {
        if (l.var != x) {
          next.remaining.push_back(l);
        } else if (l.positive == value) {
          satisfied = true;
          break;
        }
      }
      if (!satisfied) r.clauses_.push_back(std::move(next));
    }
    return r;
  }

  ResidualFormula restrict_to(std::vector<ResidualClause> clauses) const {
    ResidualFormula r;
    r.assignment_ = assignment_;
    r.clauses_ = std::move(clauses);
    return r;
  }

  /// Exact encoding of the clause indices and their remaining literals.
  std::string cache_key() const {
    std::string key;
    for (const auto& c : clauses_) {
      key += std::to_string(c.index);
      key += ':';
      for (Literal l : c.remaining) {
        key += std::to_string(l.to_dimacs());
        key += ',';
      }
      key += ';';
    }
    return key;
  }

private:
  std::vector<ResidualClause> clauses_;
  std::vector<std::int8_t> assignment_;
};

class NoFreeVariable : public std::logic_error {
public:
  NoFreeVariable() : std::logic_error("NoFreeVariable: no unassigned variable in an active clause") {}
};

inline Variable choose_branch_variable(const ResidualFormula& r, BranchPolicy policy) {
  if (policy == BranchPolicy::SmallestIndex) {
    std::optional<Variable> best;
    for (const auto& c : r.clauses())
      for (Literal l : c.remaining)
        if (!best || l.var < *best) best = l.var;
    if (!best) throw NoFreeVariable();
    return *best;
  }
  std::vector<std::uint32_t> occurrences(r.num_vars() + 1, 0);
  for (const auto& c : r.clauses())
    for (Literal l : c.remaining) ++occurrences[l.var.index];
  std::uint32_t best = 0;
  for (std::uint32_t v = 1; v <= r.num_vars(); ++v)
    if (occurrences[v] > occurrences[best]) best = v;
  if (best == 0) throw NoFreeVariable();
  return Variable(best);
}

/// Connected components of the clause/variable incidence graph over the
/// unassigned variables, ordered by smallest variable.
inline std::vector<ResidualFormula> split_components(const ResidualFormula& r) {
  const auto& clauses = r.clauses();
  const std::uint32_t n = r.num_vars();
  // Union-find over variables.
  std::vector<std::uint32_t> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& c : clauses)
    for (std::size_t i = 1; i < c.remaining.size(); ++i) {
      auto a = find(c.remaining[0].var.index), b = find(c.remaining[i].var.index);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

  // Roots are the smallest variable of their component.
  std::vector<std::uint32_t> roots;
  std::unordered_map<std::uint32_t, std::vector<ResidualClause>> groups;
  std::vector<ResidualClause> empty_clauses;
  for (const auto& c : clauses) {
    if (c.remaining.empty()) {
      empty_clauses.push_back(c);
      continue;
    }
    auto root = find(c.remaining[0].var.index);
    auto [it, inserted] = groups.try_emplace(root);
    if (inserted) roots.push_back(root);
    it->second.push_back(c);
  }
  std::sort(roots.begin(), roots.end());
  std::vector<ResidualFormula> out;
  // A violated clause has no variables; it forms its own component first.
  if (!empty_clauses.empty()) out.push_back(r.restrict_to(std::move(empty_clauses)));
  for (auto root : roots) out.push_back(r.restrict_to(std::move(groups[root])));
  return out;
}

namespace detail {

class Compiler {
public:
  Compiler(const CnfFormula& f, CompileOptions opts)
      : opts_(opts), builder_(f.num_vars(), f.num_clauses()) {}

  CertifiedDnnf run(const ResidualFormula& root) && {
    NodeId src = compile(root);
    return std::move(builder_).build(src);
  }

private:
  NodeId compile(const ResidualFormula& r) {
    if (auto violated = r.violated_clause()) return false_sink(*violated);
    if (r.clauses().empty()) return true_sink();

    std::string key;
    if (opts_.caching) {
      key = r.cache_key();
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }

    NodeId result;
    auto components = split_components(r);
    if (components.size() >= 2) {
      result = compile(components[0]);
      for (std::size_t i = 1; i < components.size(); ++i)
        result = builder_.add_and(result, compile(components[i]));
    } else {
      const Variable x = choose_branch_variable(r, opts_.branching);
      const NodeId lo = compile(r.assign(x, false));
      const NodeId hi = compile(r.assign(x, true));
      result = builder_.add_decision(x, lo, hi);
    }
    if (opts_.caching) cache_.emplace(std::move(key), result);
    return result;
  }

  NodeId true_sink() {
    if (!true_) true_ = builder_.add_true();
    return *true_;
  }
  NodeId false_sink(std::size_t clause) {
    auto [it, inserted] = false_.try_emplace(clause);
    if (inserted) it->second = builder_.add_false(clause);
    return it->second;
  }

  CompileOptions opts_;
  DnnfBuilder builder_;
  std::optional<NodeId> true_;
  std::unordered_map<std::size_t, NodeId> false_;
  std::unordered_map<std::string, NodeId> cache_;
};

}  // namespace detail

inline CertifiedDnnf compile(const CnfFormula& f, CompileOptions opts = {}) {
  return detail::Compiler(f, opts).run(ResidualFormula::from(f));
}

}  // namespace kcps
