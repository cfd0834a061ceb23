#pragma once

// Brute-force ground truth by enumerating every assignment in lexicographic
// order (x1 most significant). Circuit semantics here go through compatible
// paths, never through the bottom-up passes the checker and queries use.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "kcps/cnf.hpp"
#include "kcps/dnnf.hpp"
#include "kcps/queries.hpp"

namespace kcps {

struct OracleLimit {
  std::uint32_t max_vars = 20;
};

enum class OracleErrc { TooLarge, VariableMismatch };

class OracleError : public std::runtime_error {
public:
  OracleError(OracleErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  OracleErrc code() const { return code_; }

private:
  OracleErrc code_;
};

namespace detail {

inline void check_limit(std::uint32_t n, OracleLimit limit) {
  if (n > limit.max_vars || n >= 64)
    throw OracleError(OracleErrc::TooLarge, "TooLarge: " + std::to_string(n) +
                                                " variables exceeds oracle limit " +
                                                std::to_string(limit.max_vars));
}

template <class Fn>
void for_each_assignment(std::uint32_t n, Fn&& fn) {
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < total; ++bits)
    if (!fn(Assignment::from_index(n, bits))) return;
}

/// 1 iff only 1-sinks are reached by paths compatible with t.
inline bool path_value(const CertifiedDnnf& d, const Assignment& t) {
  for (NodeId s : compatible_paths_reach_only(d, t))
    if (std::holds_alternative<FalseSink>(d.node(s))) return false;
  return true;
}

}  // namespace detail

inline BigCount oracle_count(const CnfFormula& f, OracleLimit limit = {}) {
  detail::check_limit(f.num_vars(), limit);
  std::uint64_t count = 0;
  detail::for_each_assignment(f.num_vars(), [&](const Assignment& t) {
    count += cnf_value(f, t) ? 1 : 0;
    return true;
  });
  return BigCount(count);
}

inline std::uint64_t oracle_maxsat(const CnfFormula& f, OracleLimit limit = {}) {
  detail::check_limit(f.num_vars(), limit);
  std::uint64_t best = 0;
  detail::for_each_assignment(f.num_vars(), [&](const Assignment& t) {
    std::uint64_t sat = 0;
    for (const auto& c : f.clauses()) sat += clause_value(c, t) ? 1 : 0;
    best = std::max(best, sat);
    return best < f.num_clauses();
  });
  return best;
}

enum class FailedImplication {
  FormulaImpliesCircuit,  // t satisfies F but not D
  CircuitImpliesFormula,  // t satisfies D but not F
};

struct Counterexample {
  Assignment assignment;
  FailedImplication direction;
  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

/// nullopt when F and D agree on every assignment; else the lexicographically
/// first disagreement.
inline std::optional<Counterexample> oracle_equiv(const CnfFormula& f, const CertifiedDnnf& d,
                                                  OracleLimit limit = {}) {
  if (f.num_vars() != d.num_vars())
    throw OracleError(OracleErrc::VariableMismatch, "formula and circuit variable counts differ");
  detail::check_limit(f.num_vars(), limit);
  std::optional<Counterexample> out;
  detail::for_each_assignment(f.num_vars(), [&](const Assignment& t) {
    const bool fv = cnf_value(f, t);
    const bool dv = detail::path_value(d, t);
    if (fv == dv) return true;
    out = Counterexample{t, fv ? FailedImplication::FormulaImpliesCircuit
                               : FailedImplication::CircuitImpliesFormula};
    return false;
  });
  return out;
}

/// Correctness straight from the definition. Assumes every 0-sink label is a
/// valid index into f.
inline bool oracle_correct(const CertifiedDnnf& d, const CnfFormula& f, OracleLimit limit = {}) {
  detail::check_limit(d.num_vars(), limit);
  bool ok = true;
  detail::for_each_assignment(d.num_vars(), [&](const Assignment& t) {
    for (NodeId s : compatible_paths_reach_only(d, t))
      if (auto* fs = std::get_if<FalseSink>(&d.node(s)))
        if (clause_value(f.clause(fs->clause_ref), t)) {
          ok = false;
          return false;
        }
    return true;
  });
  return ok;
}

}  // namespace kcps
