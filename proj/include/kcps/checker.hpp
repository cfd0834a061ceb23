#pragma once

// Certificate checking: correctness of certified dec-DNNF and the #SAT /
// maxSAT proof-system verifiers built on it.
//
// A certified dec-DNNF is correct when every assignment that has a compatible
// path into a 0-sink falsifies the clause labeling that sink. For a sink alpha
// and a literal l on x of its label, that holds iff alpha becomes unreachable
// from the source once every decision edge on x that satisfies l is deleted.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kcps/cnf.hpp"
#include "kcps/dnnf.hpp"
#include "kcps/queries.hpp"

namespace kcps {

enum class CheckErrc { StructureInvalid, BadClauseRef, TautologicalLabel };

inline const char* to_string(CheckErrc e) {
  switch (e) {
    case CheckErrc::StructureInvalid: return "StructureInvalid";
    case CheckErrc::BadClauseRef: return "BadClauseRef";
    case CheckErrc::TautologicalLabel: return "TautologicalLabel";
  }
  return "?";
}

class CheckError : public std::runtime_error {
public:
  CheckError(CheckErrc code, NodeId node, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), node_(node) {}
  CheckErrc code() const { return code_; }
  NodeId node() const { return node_; }

private:
  CheckErrc code_;
  NodeId node_;
};

struct PathStep {
  NodeId node;
  /// 0 = lo/left edge, 1 = hi/right edge.
  std::uint8_t edge;
  friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct CorrectnessViolation {
  NodeId sink;
  Literal literal;
  /// Source-to-sink path avoiding every decision edge that falsifies `literal`.
  std::vector<PathStep> witness;
  friend bool operator==(const CorrectnessViolation&, const CorrectnessViolation&) = default;
};

struct CorrectnessReport {
  std::vector<CorrectnessViolation> violations;
  bool correct() const { return violations.empty(); }
};

inline std::string describe_path(const CertifiedDnnf& d, const std::vector<PathStep>& path,
                                 NodeId sink) {
  std::ostringstream os;
  for (const auto& s : path) {
    const bool decision = std::holds_alternative<Decision>(d.node(s.node));
    os << s.node.index << ':' << (decision ? (s.edge ? "hi" : "lo") : (s.edge ? "right" : "left"))
       << ' ';
  }
  os << sink.index;
  return os.str();
}

/// Unchecked correctness test: d must pass validate_structure.
inline CorrectnessReport check_correct_unchecked(const CertifiedDnnf& d, const CnfFormula& f) {
  struct Target {
    NodeId sink;
    std::size_t position;
    Literal literal;
  };
  // (var, satisfying value) -> sinks whose label holds that literal. A path that reaches such a
  // sink without taking the falsifying edge on var witnesses a violation.
  std::map<std::pair<std::uint32_t, bool>, std::vector<Target>> by_edge;

  const std::uint32_t n = static_cast<std::uint32_t>(d.num_nodes());
  for (std::uint32_t i = 0; i < n; ++i) {
    auto* sink = std::get_if<FalseSink>(&d.nodes()[i]);
    if (!sink) continue;
    if (sink->clause_ref == 0 || sink->clause_ref > f.num_clauses())
      throw CheckError(CheckErrc::BadClauseRef, NodeId(i),
                       "sink " + std::to_string(i) + " references clause " +
                           std::to_string(sink->clause_ref));
    const Clause& label = f.clause(sink->clause_ref);
    if (label.tautological())
      throw CheckError(CheckErrc::TautologicalLabel, NodeId(i),
                       "sink " + std::to_string(i) + " is labeled with tautological clause " +
                           std::to_string(sink->clause_ref));
    const auto& lits = label.literals();
    for (std::size_t p = 0; p < lits.size(); ++p) {
      if (std::find(lits.begin(), lits.begin() + static_cast<std::ptrdiff_t>(p), lits[p]) !=
          lits.begin() + static_cast<std::ptrdiff_t>(p))
        continue;
      const Literal l = lits[p];
      by_edge[{l.var.index, l.positive}].push_back({NodeId(i), p, l});
    }
  }

  struct Found {
    NodeId sink;
    std::size_t position;
    CorrectnessViolation violation;
  };
  std::vector<Found> found;

  constexpr std::uint32_t none = UINT32_MAX;
  std::vector<std::uint32_t> pred(n);
  std::vector<std::uint8_t> pred_edge(n);
  for (const auto& [key, targets] : by_edge) {
    const auto [var, satisfying] = key;
    std::fill(pred.begin(), pred.end(), none);
    const std::uint32_t src = d.source().index;
    pred[src] = src;
    std::vector<std::uint32_t> stack{src};
    auto visit = [&](std::uint32_t from, NodeId to, std::uint8_t edge) {
      if (pred[to.index] != none) return;
      pred[to.index] = from;
      pred_edge[to.index] = edge;
      stack.push_back(to.index);
    };
    while (!stack.empty()) {
      const std::uint32_t cur = stack.back();
      stack.pop_back();
      const Node& node = d.nodes()[cur];
      if (auto* dec = std::get_if<Decision>(&node)) {
        const bool on_var = dec->var.index == var;
        if (!on_var || !satisfying) visit(cur, dec->lo, 0);
        if (!on_var || satisfying) visit(cur, dec->hi, 1);
      } else if (auto* a = std::get_if<AndNode>(&node)) {
        visit(cur, a->left, 0);
        visit(cur, a->right, 1);
      }
    }
    for (const auto& t : targets) {
      if (pred[t.sink.index] == none) continue;
      std::vector<PathStep> path;
      for (std::uint32_t at = t.sink.index; at != src; at = pred[at])
        path.push_back({NodeId(pred[at]), pred_edge[at]});
      std::reverse(path.begin(), path.end());
      found.push_back({t.sink, t.position, {t.sink, t.literal, std::move(path)}});
    }
  }

  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    return std::pair(a.sink, a.position) < std::pair(b.sink, b.position);
  });
  CorrectnessReport report;
  for (auto& f2 : found) report.violations.push_back(std::move(f2.violation));
  return report;
}

inline CorrectnessReport check_correct(const CertifiedDnnf& d, const CnfFormula& f) {
  auto structure = validate_structure(d);
  if (!structure.valid())
    throw CheckError(CheckErrc::StructureInvalid, structure.violations.front().node,
                     describe(structure.violations.front()));
  return check_correct_unchecked(d, f);
}

// ---------------------------------------------------------------------------
// Proof systems

enum class RejectReason {
  StructureInvalid,
  NotCorrect,
  ClauseNotInFormula,
  NotEntailing,
  CountMismatch,
  VarCountMismatch,
};

inline const char* to_string(RejectReason r) {
  switch (r) {
    case RejectReason::StructureInvalid: return "StructureInvalid";
    case RejectReason::NotCorrect: return "NotCorrect";
    case RejectReason::ClauseNotInFormula: return "ClauseNotInFormula";
    case RejectReason::NotEntailing: return "NotEntailing";
    case RejectReason::CountMismatch: return "CountMismatch";
    case RejectReason::VarCountMismatch: return "VarCountMismatch";
  }
  return "?";
}

struct Rejection {
  RejectReason reason;
  /// Human-readable payload; no line breaks.
  std::string detail;
  std::optional<NodeId> sink = std::nullopt;
  std::optional<std::size_t> clause = std::nullopt;
  std::optional<BigCount> expected = std::nullopt;
  std::optional<BigCount> actual = std::nullopt;

  friend bool operator==(const Rejection&, const Rejection&) = default;
};

class Verdict {
public:
  static Verdict valid(BigCount value) { return Verdict(std::move(value)); }
  static Verdict invalid(Rejection r) { return Verdict(std::move(r)); }

  bool is_valid() const { return value_.has_value(); }
  const BigCount& value() const { return value_.value(); }
  const Rejection& rejection() const { return rejection_.value(); }

  friend bool operator==(const Verdict&, const Verdict&) = default;

private:
  explicit Verdict(BigCount v) : value_(std::move(v)) {}
  explicit Verdict(Rejection r) : rejection_(std::move(r)) {}
  std::optional<BigCount> value_;
  std::optional<Rejection> rejection_;
};

namespace detail {

/// Structure, variable count, clause membership, correctness and D => F.
inline std::optional<Rejection> check_equivalence(const CnfFormula& f, const CertifiedDnnf& d) {
  auto structure = validate_structure(d);
  if (!structure.valid()) {
    const auto& v = structure.violations.front();
    return Rejection{RejectReason::StructureInvalid, describe(v), v.node};
  }
  if (d.num_vars() != f.num_vars() || d.num_clauses() != f.num_clauses()) {
    return Rejection{RejectReason::VarCountMismatch,
                     "formula has " + std::to_string(f.num_vars()) + " vars " +
                         std::to_string(f.num_clauses()) + " clauses, certificate has " +
                         std::to_string(d.num_vars()) + " vars " +
                         std::to_string(d.num_clauses()) + " clauses"};
  }
  // Labels are indices into f, so membership of F(D) in F reduces to a range check.
  for (std::uint32_t i = 0; i < d.num_nodes(); ++i)
    if (auto* s = std::get_if<FalseSink>(&d.nodes()[i]))
      if (s->clause_ref == 0 || s->clause_ref > f.num_clauses())
        return Rejection{RejectReason::ClauseNotInFormula,
                         "sink " + std::to_string(i) + " clause " + std::to_string(s->clause_ref),
                         NodeId(i)};
  try {
    auto report = check_correct_unchecked(d, f);
    if (!report.correct()) {
      const auto& v = report.violations.front();
      return Rejection{RejectReason::NotCorrect,
                       "sink " + std::to_string(v.sink.index) + " literal " +
                           std::to_string(v.literal.to_dimacs()) + " path " +
                           describe_path(d, v.witness, v.sink),
                       v.sink};
    }
  } catch (const CheckError& e) {
    return Rejection{RejectReason::NotCorrect, e.what(), e.node()};
  }
  if (auto ent = entails_cnf_unchecked(d, f); !ent.entailed())
    return Rejection{RejectReason::NotEntailing, "clause " + std::to_string(*ent.failing_clause),
                     std::nullopt, ent.failing_clause};
  return std::nullopt;
}

inline Verdict settle(BigCount computed, const std::optional<BigCount>& claimed) {
  if (claimed && *claimed != computed)
    return Verdict::invalid({RejectReason::CountMismatch,
                             "expected " + claimed->str() + " actual " + computed.str(),
                             std::nullopt, std::nullopt, *claimed, computed});
  return Verdict::valid(std::move(computed));
}

}  // namespace detail

/// kcps(#SAT): accepts d as a proof that f has count_models(d) models.
inline Verdict check_kcps_sharp(const CnfFormula& f, const CertifiedDnnf& d,
                                const std::optional<BigCount>& claimed = std::nullopt) {
  if (auto r = detail::check_equivalence(f, d)) return Verdict::invalid(std::move(*r));
  return detail::settle(count_models(d, compute_var_sets(d)), claimed);
}

struct TildeFormula {
  CnfFormula formula;
  /// Selector of clause i is variable n + i.
  std::vector<Variable> selectors;
};

/// Adds a fresh negated selector literal to every clause.
inline TildeFormula build_tilde(const CnfFormula& f) {
  const auto n = f.num_vars();
  const auto m = static_cast<std::uint32_t>(f.num_clauses());
  TildeFormula out;
  std::vector<Clause> clauses;
  clauses.reserve(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    auto lits = f.clauses()[i].literals();
    const Variable s(n + i + 1);
    lits.emplace_back(s, false);
    clauses.emplace_back(std::move(lits));
    out.selectors.push_back(s);
  }
  out.formula = CnfFormula(n + m, std::move(clauses));
  return out;
}

/// kcps(maxSAT): d certifies the selector formula of f; the value is the
/// largest number of selectors set to 1 over its models.
inline Verdict check_kcps_max(const CnfFormula& f, const CertifiedDnnf& d,
                              const std::optional<std::uint64_t>& claimed = std::nullopt) {
  const TildeFormula tilde = build_tilde(f);
  if (auto r = detail::check_equivalence(tilde.formula, d)) return Verdict::invalid(std::move(*r));
  const auto vars = compute_var_sets(d);
  VarSet selectors(d.num_vars());
  for (Variable s : tilde.selectors) selectors.insert(s);
  const HwResult hw = max_hamming_weight(d, vars, selectors);
  // The selector formula is always satisfiable (all selectors 0).
  if (hw.is_unsatisfiable())
    return Verdict::invalid({RejectReason::StructureInvalid,
                             "certificate of the selector formula has no model"});
  std::optional<BigCount> claim;
  if (claimed) claim = BigCount(*claimed);
  return detail::settle(BigCount(hw.weight()), claim);
}

}  // namespace kcps
