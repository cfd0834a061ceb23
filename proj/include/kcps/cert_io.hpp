#pragma once

// CDNNF text format.
//
//   cdnnf <numNodes> <numEdges> <numVars> <numClauses>
//   T                      1-sink
//   F <clause>             0-sink labeled with a 1-based clause index
//   D <var> <lo> <hi>      decision; lo is the 0-edge, hi the 1-edge
//   A <left> <right>       and-node
//
// Node ids are 0-based line positions after the header, children must refer
// to earlier nodes, and the last node is the source. Lines starting with 'c'
// are comments.

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kcps/dnnf.hpp"

namespace kcps {

enum class CertErrc { SyntaxError, ForwardReference, MultipleSources, EmptyFile };

inline const char* to_string(CertErrc e) {
  switch (e) {
    case CertErrc::SyntaxError: return "SyntaxError";
    case CertErrc::ForwardReference: return "ForwardReference";
    case CertErrc::MultipleSources: return "MultipleSources";
    case CertErrc::EmptyFile: return "EmptyFile";
  }
  return "?";
}

class CertParseError : public std::runtime_error {
public:
  CertParseError(CertErrc code, std::size_t line, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + " at line " + std::to_string(line) +
                           ": " + what),
        code_(code), line_(line) {}
  CertErrc code() const { return code_; }
  /// 1-based.
  std::size_t line() const { return line_; }

private:
  CertErrc code_;
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(' ', start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

inline bool parse_u64(std::string_view tok, std::uint64_t& out) {
  if (tok.empty() || tok.size() > 19) return false;
  std::uint64_t v = 0;
  for (char ch : tok) {
    if (ch < '0' || ch > '9') return false;
    v = v * 10 + static_cast<std::uint64_t>(ch - '0');
  }
  out = v;
  return true;
}

}  // namespace detail

inline CertifiedDnnf read_cert(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::uint64_t num_nodes = 0, num_edges = 0, num_vars = 0, num_clauses = 0;
  std::uint64_t edges = 0;
  std::vector<Node> nodes;
  std::vector<std::size_t> node_line;

  auto syntax = [&](const std::string& what) {
    return CertParseError(CertErrc::SyntaxError, lineno, what);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') {
      if (line.rfind("cdnnf", 0) != 0) continue;
    }
    auto toks = detail::split_spaces(line);
    std::vector<std::uint64_t> args;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      std::uint64_t v;
      if (!detail::parse_u64(toks[i], v)) throw syntax("bad field '" + std::string(toks[i]) + "'");
      args.push_back(v);
    }

    if (!have_header) {
      if (toks[0] != "cdnnf" || args.size() != 4)
        throw syntax("expected 'cdnnf <numNodes> <numEdges> <numVars> <numClauses>'");
      num_nodes = args[0];
      num_edges = args[1];
      num_vars = args[2];
      num_clauses = args[3];
      if (num_vars > UINT32_MAX - 1 || num_nodes > UINT32_MAX)
        throw syntax("header value too large");
      have_header = true;
      continue;
    }

    const std::uint64_t self = nodes.size();
    if (self >= num_nodes) throw syntax("more node lines than declared");
    auto child = [&](std::uint64_t id) {
      if (id >= self)
        throw CertParseError(CertErrc::ForwardReference, lineno,
                             "node " + std::to_string(self) + " references node " +
                                 std::to_string(id));
      return NodeId(static_cast<std::uint32_t>(id));
    };

    if (toks[0] == "T" && args.empty()) {
      nodes.emplace_back(TrueSink{});
    } else if (toks[0] == "F" && args.size() == 1) {
      if (args[0] == 0 || args[0] > num_clauses)
        throw syntax("clause index " + std::to_string(args[0]) + " outside 1.." +
                     std::to_string(num_clauses));
      nodes.emplace_back(FalseSink{static_cast<std::size_t>(args[0])});
    } else if (toks[0] == "D" && args.size() == 3) {
      if (args[0] == 0 || args[0] > num_vars)
        throw syntax("variable " + std::to_string(args[0]) + " outside 1.." +
                     std::to_string(num_vars));
      nodes.emplace_back(Decision{Variable(static_cast<std::uint32_t>(args[0])), child(args[1]),
                                  child(args[2])});
      edges += 2;
    } else if (toks[0] == "A" && args.size() == 2) {
      nodes.emplace_back(AndNode{child(args[0]), child(args[1])});
      edges += 2;
    } else {
      throw syntax("unrecognized node line");
    }
    node_line.push_back(lineno);
  }

  if (!have_header) throw CertParseError(CertErrc::EmptyFile, lineno ? lineno : 1, "no header");
  if (nodes.empty()) throw CertParseError(CertErrc::EmptyFile, lineno, "no node lines");
  if (nodes.size() != num_nodes)
    throw syntax("header declares " + std::to_string(num_nodes) + " nodes, found " +
                 std::to_string(nodes.size()));
  if (edges != num_edges)
    throw syntax("header declares " + std::to_string(num_edges) + " edges, found " +
                 std::to_string(edges));

  std::vector<char> referenced(nodes.size(), 0);
  for (const auto& n : nodes)
    for (NodeId c : children(n)) referenced[c.index] = 1;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!referenced[i])
      throw CertParseError(CertErrc::MultipleSources, node_line[i],
                           "node " + std::to_string(i) + " has no parent and is not last");

  const NodeId source(static_cast<std::uint32_t>(nodes.size() - 1));
  return CertifiedDnnf(std::move(nodes), source, static_cast<std::uint32_t>(num_vars),
                       static_cast<std::size_t>(num_clauses));
}

inline CertifiedDnnf read_cert(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_cert(in);
}

inline void write_cert(std::ostream& os, const CertifiedDnnf& d) {
  os << "cdnnf " << d.num_nodes() << ' ' << size(d) << ' ' << d.num_vars() << ' '
     << d.num_clauses() << '\n';
  for (const auto& n : d.nodes()) {
    if (std::holds_alternative<TrueSink>(n)) {
      os << "T\n";
    } else if (auto* f = std::get_if<FalseSink>(&n)) {
      os << "F " << f->clause_ref << '\n';
    } else if (auto* dec = std::get_if<Decision>(&n)) {
      os << "D " << dec->var.index << ' ' << dec->lo.index << ' ' << dec->hi.index << '\n';
    } else if (auto* a = std::get_if<AndNode>(&n)) {
      os << "A " << a->left.index << ' ' << a->right.index << '\n';
    }
  }
}

inline std::string to_cdnnf(const CertifiedDnnf& d) {
  std::ostringstream os;
  write_cert(os, d);
  return os.str();
}

}  // namespace kcps
