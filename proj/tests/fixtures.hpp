#pragma once

#include "stringy/polytope.hpp"

#include <initializer_list>
#include <vector>

namespace stringy::fixtures {

inline Polytope make(std::initializer_list<std::initializer_list<long>> points) {
  auto it = points.begin();
  const Eigen::Index d = static_cast<Eigen::Index>(it->size());
  IMat m(d, static_cast<Eigen::Index>(points.size()));
  Eigen::Index j = 0;
  for (const auto& p : points) {
    Eigen::Index i = 0;
    for (long x : p) m(i++, j) = x;
    ++j;
  }
  return Polytope::from_vertices(m);
}

// Simplex conv{0, e1, ..., ed}.
inline Polytope unit_simplex(int d) {
  IMat m = IMat::Zero(d, d + 1);
  for (int i = 0; i < d; ++i) m(i, i + 1) = 1;
  return Polytope::from_vertices(m);
}

// conv{e1, ..., ed, -(1,...,1)}: the d-dimensional analogue of F1/F4/F5.
inline Polytope projective_simplex(int d) {
  IMat m(d, d + 1);
  m.setZero();
  for (int i = 0; i < d; ++i) m(i, i) = 1;
  for (int i = 0; i < d; ++i) m(i, d) = -1;
  return Polytope::from_vertices(m);
}

// Cube [-1,1]^d.
inline Polytope cube(int d) {
  IMat m(d, 1 << d);
  for (int j = 0; j < (1 << d); ++j)
    for (int i = 0; i < d; ++i) m(i, j) = (j >> i & 1) ? 1 : -1;
  return Polytope::from_vertices(m);
}

inline Polytope F1() { return make({{1, 0}, {0, 1}, {-1, -1}}); }
inline Polytope F2() { return make({{1, 0}, {0, 1}, {-1, -2}}); }
inline Polytope F3() { return make({{1, 0}, {0, 1}, {-1, -3}}); }
inline Polytope F4() { return projective_simplex(3); }
inline Polytope F5() { return projective_simplex(4); }
inline Polytope F7() { return make({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}); }
inline Polytope C3() { return cube(3); }
inline Polytope C4() { return cube(4); }

// [0,1] x 2*(unit 3-simplex): 4-dimensional, Gorenstein of index 2.
inline Polytope F6() {
  std::vector<std::vector<long>> pts;
  std::vector<std::vector<long>> simplex = {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
  IMat m(4, 8);
  Eigen::Index j = 0;
  for (long x0 : {0L, 1L})
    for (const auto& s : simplex) {
      m(0, j) = x0;
      for (int i = 0; i < 3; ++i) m(i + 1, j) = s[static_cast<size_t>(i)];
      ++j;
    }
  return Polytope::from_vertices(m);
}

// k * unit_simplex(d) - shift.
inline Polytope shifted_dilated_simplex(int d, long k, long shift) {
  Polytope s = unit_simplex(d);
  RVec t = RVec::Constant(d, Rational(-shift));
  return s.dilate(k).translate(t);
}

}  // namespace stringy::fixtures
