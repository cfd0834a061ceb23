#pragma once

// Random instance and certificate generators shared by the property and
// acceptance suites. Everything is driven by an explicit seed.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "kcps/kcps.hpp"

namespace kcps::testkit {

using Rng = std::mt19937_64;

inline std::uint32_t uniform(Rng& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// m clauses over n variables with widths in [min_width, max_width]. Literals
/// are independent draws, so repeats and tautologies can occur.
inline CnfFormula random_cnf(Rng& rng, std::uint32_t n, std::uint32_t m, std::uint32_t min_width,
                             std::uint32_t max_width) {
  std::vector<Clause> clauses;
  for (std::uint32_t i = 0; i < m; ++i) {
    std::vector<Literal> lits;
    if (n > 0) {
      const auto w = uniform(rng, min_width, max_width);
      for (std::uint32_t j = 0; j < w; ++j)
        lits.emplace_back(Variable(uniform(rng, 1, n)), coin(rng, 0.5));
    }
    clauses.emplace_back(std::move(lits));
  }
  return CnfFormula(n, std::move(clauses));
}

/// Width-k clauses on k distinct variables.
inline CnfFormula random_kcnf(Rng& rng, std::uint32_t n, std::uint32_t m, std::uint32_t k) {
  std::vector<Clause> clauses;
  std::vector<std::uint32_t> vars(n);
  for (std::uint32_t i = 0; i < n; ++i) vars[i] = i + 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    std::shuffle(vars.begin(), vars.end(), rng);
    std::vector<Literal> lits;
    for (std::uint32_t j = 0; j < k && j < n; ++j) lits.emplace_back(Variable(vars[j]), coin(rng, 0.5));
    clauses.emplace_back(std::move(lits));
  }
  return CnfFormula(n, std::move(clauses));
}

/// Structurally valid certified dec-DNNF with random labels into a formula of
/// m clauses. Sub-DAGs are shared whenever their variables stay available.
class RandomDnnf {
public:
  RandomDnnf(Rng& rng, std::uint32_t n, std::size_t m) : rng_(rng), m_(m), b_(n, m), n_(n) {}

  CertifiedDnnf build(std::uint32_t depth) && {
    std::vector<std::uint32_t> vars(n_);
    for (std::uint32_t i = 0; i < n_; ++i) vars[i] = i + 1;
    gen(vars, depth);
    return std::move(b_).build();
  }

private:
  NodeId sink() {
    if (m_ == 0 || coin(rng_, 0.45)) {
      if (!true_) {
        true_ = b_.add_true();
        record(*true_, {});
      }
      return *true_;
    }
    const auto label = uniform(rng_, 1, static_cast<std::uint32_t>(m_));
    if (label >= false_.size()) false_.resize(label + 1);
    if (!false_[label]) {
      false_[label] = b_.add_false(label);
      record(*false_[label], {});
    }
    return *false_[label];
  }

  NodeId gen(std::vector<std::uint32_t> avail, std::uint32_t depth) {
    if (avail.empty() || depth == 0 || coin(rng_, 0.15)) return sink();
    if (coin(rng_, 0.2)) {
      std::vector<NodeId> usable;
      for (const auto& [id, used] : made_)
        if (std::includes(avail.begin(), avail.end(), used.begin(), used.end()))
          usable.push_back(id);
      if (!usable.empty()) return usable[uniform(rng_, 0, static_cast<std::uint32_t>(usable.size() - 1))];
    }
    NodeId id;
    if (avail.size() >= 2 && coin(rng_, 0.25)) {
      std::shuffle(avail.begin(), avail.end(), rng_);
      const auto cut = uniform(rng_, 1, static_cast<std::uint32_t>(avail.size() - 1));
      std::vector<std::uint32_t> a(avail.begin(), avail.begin() + cut), c(avail.begin() + cut, avail.end());
      std::sort(a.begin(), a.end());
      std::sort(c.begin(), c.end());
      auto l = gen(a, depth - 1);
      auto r = gen(c, depth - 1);
      id = b_.add_and(l, r);
      auto vs = tested_vars(l);
      auto vr = tested_vars(r);
      vs.insert(vs.end(), vr.begin(), vr.end());
      record(id, std::move(vs));
    } else {
      const auto pick = uniform(rng_, 0, static_cast<std::uint32_t>(avail.size() - 1));
      const auto x = avail[pick];
      avail.erase(avail.begin() + pick);
      auto lo = gen(avail, depth - 1);
      auto hi = gen(avail, depth - 1);
      id = b_.add_decision(x, lo, hi);
      auto vs = tested_vars(lo);
      auto vh = tested_vars(hi);
      vs.insert(vs.end(), vh.begin(), vh.end());
      vs.push_back(x);
      record(id, std::move(vs));
    }
    made_.push_back({id, tested_vars(id)});
    return id;
  }

  std::vector<std::uint32_t> tested_vars(NodeId id) const { return vars_.at(id.index); }

  void record(NodeId id, std::vector<std::uint32_t> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    if (vars_.size() <= id.index) vars_.resize(id.index + 1);
    vars_[id.index] = std::move(vs);
  }

  Rng& rng_;
  std::size_t m_;
  DnnfBuilder b_;
  std::uint32_t n_;
  std::optional<NodeId> true_;
  std::vector<std::optional<NodeId>> false_;
  std::vector<std::pair<NodeId, std::vector<std::uint32_t>>> made_;
  std::vector<std::vector<std::uint32_t>> vars_;
};

inline CertifiedDnnf with_node(const CertifiedDnnf& d, NodeId id, Node replacement) {
  auto nodes = d.nodes();
  nodes[id.index] = std::move(replacement);
  return CertifiedDnnf(std::move(nodes), d.source(), d.num_vars(), d.num_clauses());
}

template <class T>
std::vector<NodeId> nodes_of(const CertifiedDnnf& d) {
  std::vector<NodeId> out;
  for (std::uint32_t i = 0; i < d.num_nodes(); ++i)
    if (std::holds_alternative<T>(d.nodes()[i])) out.emplace_back(i);
  return out;
}

template <class T>
T pick(Rng& rng, const std::vector<T>& xs) {
  return xs[uniform(rng, 0, static_cast<std::uint32_t>(xs.size() - 1))];
}

/// Reachable var sets without going through compute_var_sets.
inline std::vector<std::uint32_t> tested_below(const CertifiedDnnf& d, NodeId id) {
  std::vector<std::uint32_t> out;
  std::vector<char> seen(d.num_nodes(), 0);
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    if (seen[cur.index]) continue;
    seen[cur.index] = 1;
    if (auto* dec = std::get_if<Decision>(&d.node(cur))) out.push_back(dec->var.index);
    for (NodeId c : children(d.node(cur))) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace kcps::testkit
