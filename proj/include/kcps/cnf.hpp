#pragma once

// CNF data model, DIMACS reading/writing and clause/assignment semantics.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kcps {

struct Variable {
  std::uint32_t index = 0;

  constexpr Variable() = default;
  constexpr explicit Variable(std::uint32_t i) : index(i) {}

  friend constexpr auto operator<=>(Variable, Variable) = default;
};

struct Literal {
  Variable var;
  bool positive = true;

  constexpr Literal() = default;
  constexpr Literal(Variable v, bool pos) : var(v), positive(pos) {}

  /// Builds a literal from its signed DIMACS encoding (k > 0 positive, k < 0 negative).
  static constexpr Literal from_dimacs(std::int64_t k) {
    return Literal(Variable(static_cast<std::uint32_t>(k < 0 ? -k : k)), k > 0);
  }
  constexpr std::int64_t to_dimacs() const {
    return positive ? static_cast<std::int64_t>(var.index)
                    : -static_cast<std::int64_t>(var.index);
  }
  constexpr Literal negated() const { return Literal(var, !positive); }

  // Orders by variable first, negative before positive.
  friend constexpr auto operator<=>(Literal a, Literal b) {
    if (auto c = a.var <=> b.var; c != 0) return c;
    return a.positive <=> b.positive;
  }
  friend constexpr bool operator==(Literal, Literal) = default;
};

class Clause {
public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
    key_ = literals_;
    std::sort(key_.begin(), key_.end());
    key_.erase(std::unique(key_.begin(), key_.end()), key_.end());
    for (std::size_t i = 1; i < key_.size(); ++i)
      if (key_[i].var == key_[i - 1].var) tautological_ = true;
  }
  Clause(std::initializer_list<std::int64_t> dimacs) {
    std::vector<Literal> lits;
    for (auto k : dimacs) lits.push_back(Literal::from_dimacs(k));
    *this = Clause(std::move(lits));
  }

  /// Literals in input order, duplicates kept.
  const std::vector<Literal>& literals() const { return literals_; }
  /// Sorted, duplicate-free literal set; clause identity.
  const std::vector<Literal>& canonical_key() const { return key_; }
  bool tautological() const { return tautological_; }
  std::size_t size() const { return literals_.size(); }
  bool empty() const { return literals_.empty(); }

  friend bool operator==(const Clause& a, const Clause& b) { return a.literals_ == b.literals_; }

private:
  std::vector<Literal> literals_;
  std::vector<Literal> key_;
  bool tautological_ = false;
};

class CnfFormula {
public:
  CnfFormula() = default;
  explicit CnfFormula(std::uint32_t num_vars, std::vector<Clause> clauses = {})
      : num_vars_(num_vars), clauses_(std::move(clauses)) {
    for (const auto& c : clauses_)
      for (auto l : c.literals())
        if (l.var.index == 0 || l.var.index > num_vars_)
          throw std::invalid_argument("literal variable out of range: " +
                                      std::to_string(l.to_dimacs()));
  }

  std::uint32_t num_vars() const { return num_vars_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t num_clauses() const { return clauses_.size(); }

  /// 1-based clause access.
  const Clause& clause(std::size_t index) const { return clauses_.at(index - 1); }

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

private:
  std::uint32_t num_vars_ = 0;
  std::vector<Clause> clauses_;
};

/// Total assignment over variables 1..n.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(std::uint32_t num_vars) : values_(num_vars + 1, 0) {}

  /// Lexicographic index: x1 is the most significant position.
  static Assignment from_index(std::uint32_t num_vars, std::uint64_t bits) {
    Assignment t(num_vars);
    for (std::uint32_t v = 1; v <= num_vars; ++v)
      t.values_[v] = static_cast<std::uint8_t>((bits >> (num_vars - v)) & 1u);
    return t;
  }

  std::uint32_t num_vars() const {
    return values_.empty() ? 0 : static_cast<std::uint32_t>(values_.size() - 1);
  }
  bool operator[](Variable v) const { return values_[v.index] != 0; }
  bool value(Literal l) const { return (*this)[l.var] == l.positive; }
  void set(Variable v, bool value) { values_[v.index] = value ? 1 : 0; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Assignment& t) {
    for (std::uint32_t v = 1; v <= t.num_vars(); ++v)
      os << (v > 1 ? " " : "") << (t[Variable(v)] ? "" : "-") << v;
    return os;
  }

private:
  std::vector<std::uint8_t> values_;
};

inline bool clause_value(const Clause& c, const Assignment& t) {
  return std::any_of(c.literals().begin(), c.literals().end(),
                     [&](Literal l) { return t.value(l); });
}

inline bool cnf_value(const CnfFormula& f, const Assignment& t) {
  return std::all_of(f.clauses().begin(), f.clauses().end(),
                     [&](const Clause& c) { return clause_value(c, t); });
}

// ---------------------------------------------------------------------------
// DIMACS

enum class DimacsErrc { MalformedHeader, VariableOutOfRange, ClauseCountMismatch, UnterminatedClause };

inline const char* to_string(DimacsErrc e) {
  switch (e) {
    case DimacsErrc::MalformedHeader: return "MalformedHeader";
    case DimacsErrc::VariableOutOfRange: return "VariableOutOfRange";
    case DimacsErrc::ClauseCountMismatch: return "ClauseCountMismatch";
    case DimacsErrc::UnterminatedClause: return "UnterminatedClause";
  }
  return "?";
}

class DimacsError : public std::runtime_error {
public:
  DimacsError(DimacsErrc code, std::size_t line, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + " at line " + std::to_string(line) +
                           ": " + what),
        code_(code), line_(line) {}
  DimacsErrc code() const { return code_; }
  std::size_t line() const { return line_; }

private:
  DimacsErrc code_;
  std::size_t line_;
};

namespace detail {

inline bool parse_int(std::string_view tok, std::int64_t& out) {
  if (tok.empty()) return false;
  std::size_t i = 0;
  bool neg = false;
  if (tok[0] == '-' || tok[0] == '+') {
    neg = tok[0] == '-';
    i = 1;
    if (tok.size() == 1) return false;
  }
  std::int64_t v = 0;
  for (; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9') return false;
    if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) return false;
    v = v * 10 + (tok[i] - '0');
  }
  out = neg ? -v : v;
  return true;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace detail

inline CnfFormula parse_dimacs(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::int64_t n = 0, m = 0;
  std::vector<Clause> clauses;
  std::vector<Literal> current;

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks[0][0] == 'c') continue;
    if (toks[0] == "p") {
      if (have_header) throw DimacsError(DimacsErrc::MalformedHeader, lineno, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf" || !detail::parse_int(toks[2], n) ||
          !detail::parse_int(toks[3], m) || n < 0 || m < 0 ||
          n > std::numeric_limits<std::int32_t>::max())
        throw DimacsError(DimacsErrc::MalformedHeader, lineno, "expected 'p cnf <vars> <clauses>'");
      have_header = true;
      continue;
    }
    if (!have_header) throw DimacsError(DimacsErrc::MalformedHeader, lineno, "clause before header");
    for (auto tok : toks) {
      std::int64_t k;
      if (!detail::parse_int(tok, k))
        throw DimacsError(DimacsErrc::MalformedHeader, lineno,
                          "not an integer: '" + std::string(tok) + "'");
      if (k == 0) {
        clauses.emplace_back(std::move(current));
        current.clear();
        continue;
      }
      if (k > n || -k > n)
        throw DimacsError(DimacsErrc::VariableOutOfRange, lineno,
                          "literal " + std::to_string(k) + " exceeds " + std::to_string(n));
      current.push_back(Literal::from_dimacs(k));
    }
  }
  if (!have_header) throw DimacsError(DimacsErrc::MalformedHeader, lineno, "missing header");
  if (!current.empty())
    throw DimacsError(DimacsErrc::UnterminatedClause, lineno, "last clause lacks terminating 0");
  if (static_cast<std::int64_t>(clauses.size()) != m)
    throw DimacsError(DimacsErrc::ClauseCountMismatch, lineno,
                      "header declares " + std::to_string(m) + " clauses, found " +
                          std::to_string(clauses.size()));
  return CnfFormula(static_cast<std::uint32_t>(n), std::move(clauses));
}

inline CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

inline void write_dimacs(std::ostream& os, const CnfFormula& f) {
  os << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const auto& c : f.clauses()) {
    for (auto l : c.literals()) os << l.to_dimacs() << ' ';
    os << "0\n";
  }
}

inline std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream os;
  write_dimacs(os, f);
  return os.str();
}

}  // namespace kcps
