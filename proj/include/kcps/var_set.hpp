#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "kcps/cnf.hpp"

namespace kcps {

/// Dense bitset over variables 1..n.
class VarSet {
public:
  VarSet() = default;
  explicit VarSet(std::uint32_t num_vars) : words_((num_vars + 64) / 64, 0) {}

  void insert(Variable v) { words_[v.index / 64] |= bit(v); }
  bool contains(Variable v) const {
    return v.index / 64 < words_.size() && (words_[v.index / 64] & bit(v)) != 0;
  }

  VarSet& operator|=(const VarSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  std::size_t count_common(const VarSet& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  /// Smallest variable in both sets.
  std::optional<Variable> first_common(const VarSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (auto w = words_[i] & o.words_[i])
        return Variable(static_cast<std::uint32_t>(i * 64 + std::countr_zero(w)));
    return std::nullopt;
  }

  std::vector<Variable> elements() const {
    std::vector<Variable> out;
    for (std::size_t i = 0; i < words_.size(); ++i)
      for (auto w = words_[i]; w; w &= w - 1)
        out.emplace_back(static_cast<std::uint32_t>(i * 64 + std::countr_zero(w)));
    return out;
  }

  friend bool operator==(const VarSet&, const VarSet&) = default;

private:
  static std::uint64_t bit(Variable v) { return std::uint64_t{1} << (v.index % 64); }
  std::vector<std::uint64_t> words_;
};

}  // namespace kcps
