#pragma once

#include "kcps/kcps.hpp"

namespace kcps::testkit {

// x = y = z over variables x=1, y=2, z=3, certified against
//   1: (x | -y)  2: (-x | y)  3: (y | -z)  4: (-y | z)
inline CnfFormula equal3_formula() {
  return CnfFormula(3, {Clause{1, -2}, Clause{-1, 2}, Clause{2, -3}, Clause{-2, 3}});
}

inline CertifiedDnnf equal3_circuit() {
  DnnfBuilder b(3, 4);
  auto t = b.add_true();       // 0
  auto f1 = b.add_false(1);    // 1: x=0, y=1
  auto f2 = b.add_false(2);    // 2: x=1, y=0
  auto f3 = b.add_false(3);    // 3: x=0, y=0, z=1
  auto f4 = b.add_false(4);    // 4: x=1, y=1, z=0
  auto z0 = b.add_decision(3, t, f3);   // 5
  auto y0 = b.add_decision(2, z0, f1);  // 6
  auto z1 = b.add_decision(3, f4, t);   // 7
  auto y1 = b.add_decision(2, f2, z1);  // 8
  b.add_decision(1, y0, y1);            // 9
  return std::move(b).build();
}

inline Assignment assignment(std::initializer_list<int> values) {
  Assignment t(static_cast<std::uint32_t>(values.size()));
  std::uint32_t v = 1;
  for (int x : values) t.set(Variable(v++), x != 0);
  return t;
}

inline CertifiedDnnf single_true(std::uint32_t n, std::size_t m = 0) {
  DnnfBuilder b(n, m);
  b.add_true();
  return std::move(b).build();
}

inline CertifiedDnnf single_false(std::uint32_t n, std::size_t label, std::size_t m) {
  DnnfBuilder b(n, m);
  b.add_false(label);
  return std::move(b).build();
}

}  // namespace kcps::testkit
