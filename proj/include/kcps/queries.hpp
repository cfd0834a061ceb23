#pragma once

// Tractable queries on dec-DNNF: model counting, clause entailment, CNF
// entailment and maximal Hamming weight. Every pass is a single bottom-up
// sweep over the node array.
//
// Counting and Hamming weight work over the full variable set 1..num_vars.
// A node's value is relative to vars(node); variables that a branch does not
// test are accounted for with gap corrections when moving up a decision node,
// and once more at the source for variables tested nowhere.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kcps/cnf.hpp"
#include "kcps/dnnf.hpp"

namespace kcps {

using BigCount = boost::multiprecision::cpp_int;

enum class QueryErrc { StructureInvalid, VariableMismatch };

class QueryError : public std::runtime_error {
public:
  QueryError(QueryErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  QueryErrc code() const { return code_; }

private:
  QueryErrc code_;
};

namespace detail {

inline VarSetTable checked_var_sets(const CertifiedDnnf& d) {
  auto report = validate_structure(d);
  if (!report.valid())
    throw QueryError(QueryErrc::StructureInvalid,
                     "invalid dec-DNNF: " + describe(report.violations.front()));
  return compute_var_sets(d);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Model counting

/// Unchecked variant: d must satisfy validate_structure and vars must be its table.
inline BigCount count_models(const CertifiedDnnf& d, const VarSetTable& vars) {
  const std::uint32_t src = d.source().index;
  std::vector<BigCount> c(src + 1);
  for (std::uint32_t i = 0; i <= src; ++i) {
    const Node& n = d.nodes()[i];
    const NodeId self(i);
    if (std::holds_alternative<TrueSink>(n)) {
      c[i] = 1;
    } else if (auto* dec = std::get_if<Decision>(&n)) {
      // x is not in vars(child) by read-once, so the gap is a plain difference.
      const auto below = vars.count(self) - 1;
      c[i] = (c[dec->lo.index] << (below - vars.count(dec->lo))) +
             (c[dec->hi.index] << (below - vars.count(dec->hi)));
    } else if (auto* a = std::get_if<AndNode>(&n)) {
      c[i] = c[a->left.index] * c[a->right.index];
    }
  }
  return c[src] << (d.num_vars() - vars.count(d.source()));
}

inline BigCount count_models(const CertifiedDnnf& d) {
  return count_models(d, detail::checked_var_sets(d));
}

// ---------------------------------------------------------------------------
// Clause entailment

/// Satisfiability of d conditioned on a partial assignment (-1 = unassigned).
inline bool satisfiable_under(const CertifiedDnnf& d, const std::vector<std::int8_t>& partial) {
  const std::uint32_t src = d.source().index;
  std::vector<char> sat(src + 1, 0);
  for (std::uint32_t i = 0; i <= src; ++i) {
    const Node& n = d.nodes()[i];
    if (std::holds_alternative<TrueSink>(n)) {
      sat[i] = 1;
    } else if (auto* dec = std::get_if<Decision>(&n)) {
      const auto fixed = partial[dec->var.index];
      if (fixed < 0)
        sat[i] = sat[dec->lo.index] || sat[dec->hi.index];
      else
        sat[i] = sat[(fixed ? dec->hi : dec->lo).index];
    } else if (auto* a = std::get_if<AndNode>(&n)) {
      sat[i] = sat[a->left.index] && sat[a->right.index];
    }
  }
  return sat[src] != 0;
}

/// Unchecked variant of entails_clause.
inline bool entails_clause_unchecked(const CertifiedDnnf& d, const Clause& c) {
  if (c.tautological()) return true;
  std::vector<std::int8_t> falsifier(d.num_vars() + 1, -1);
  for (Literal l : c.literals()) falsifier[l.var.index] = l.positive ? 0 : 1;
  return !satisfiable_under(d, falsifier);
}

inline void check_clause_vars(const CertifiedDnnf& d, const Clause& c) {
  for (Literal l : c.literals())
    if (l.var.index == 0 || l.var.index > d.num_vars())
      throw QueryError(QueryErrc::VariableMismatch,
                       "clause literal " + std::to_string(l.to_dimacs()) +
                           " outside the circuit's variables");
}

inline bool entails_clause(const CertifiedDnnf& d, const Clause& c) {
  detail::checked_var_sets(d);
  check_clause_vars(d, c);
  return entails_clause_unchecked(d, c);
}

struct CnfEntailment {
  /// 1-based index of the lowest clause not entailed.
  std::optional<std::size_t> failing_clause;
  bool entailed() const { return !failing_clause.has_value(); }
};

inline CnfEntailment entails_cnf_unchecked(const CertifiedDnnf& d, const CnfFormula& f) {
  for (std::size_t i = 0; i < f.num_clauses(); ++i)
    if (!entails_clause_unchecked(d, f.clauses()[i])) return {i + 1};
  return {};
}

inline CnfEntailment entails_cnf(const CertifiedDnnf& d, const CnfFormula& f) {
  detail::checked_var_sets(d);
  if (d.num_vars() != f.num_vars())
    throw QueryError(QueryErrc::VariableMismatch,
                     "circuit has " + std::to_string(d.num_vars()) + " variables, formula has " +
                         std::to_string(f.num_vars()));
  return entails_cnf_unchecked(d, f);
}

// ---------------------------------------------------------------------------
// Maximal Hamming weight

class HwResult {
public:
  static HwResult unsatisfiable() { return HwResult(); }
  static HwResult weight(std::uint64_t w) { return HwResult(w); }

  bool is_unsatisfiable() const { return !w_.has_value(); }
  std::uint64_t weight() const { return w_.value(); }

  friend bool operator==(const HwResult&, const HwResult&) = default;

private:
  HwResult() = default;
  explicit HwResult(std::uint64_t w) : w_(w) {}
  std::optional<std::uint64_t> w_;
};

/// Unchecked variant: d valid, vars its table, y a subset of 1..num_vars.
inline HwResult max_hamming_weight(const CertifiedDnnf& d, const VarSetTable& vars,
                                   const VarSet& y) {
  const std::uint32_t src = d.source().index;
  // Unsatisfiable sub-circuits have no value.
  std::vector<std::optional<std::uint64_t>> w(src + 1);
  std::vector<std::uint64_t> ycount(src + 1, 0);
  for (std::uint32_t i = 0; i <= src; ++i) {
    const Node& n = d.nodes()[i];
    ycount[i] = vars[NodeId(i)].count_common(y);
    if (std::holds_alternative<TrueSink>(n)) {
      w[i] = 0;
    } else if (auto* dec = std::get_if<Decision>(&n)) {
      const std::uint64_t x_in_y = y.contains(dec->var) ? 1 : 0;
      const std::uint64_t below = ycount[i] - x_in_y;
      std::optional<std::uint64_t> best;
      if (auto lo = w[dec->lo.index]) best = *lo + (below - ycount[dec->lo.index]);
      if (auto hi = w[dec->hi.index]) {
        auto cand = *hi + x_in_y + (below - ycount[dec->hi.index]);
        best = best ? std::max(*best, cand) : cand;
      }
      w[i] = best;
    } else if (auto* a = std::get_if<AndNode>(&n)) {
      if (w[a->left.index] && w[a->right.index]) w[i] = *w[a->left.index] + *w[a->right.index];
    }
  }
  if (!w[src]) return HwResult::unsatisfiable();
  return HwResult::weight(*w[src] + (y.count() - ycount[src]));
}

inline HwResult max_hamming_weight(const CertifiedDnnf& d, const std::vector<Variable>& y) {
  auto vars = detail::checked_var_sets(d);
  VarSet ys(d.num_vars());
  for (Variable v : y) {
    if (v.index == 0 || v.index > d.num_vars())
      throw QueryError(QueryErrc::VariableMismatch,
                       "variable " + std::to_string(v.index) + " outside the circuit's variables");
    ys.insert(v);
  }
  return max_hamming_weight(d, vars, ys);
}

}  // namespace kcps
