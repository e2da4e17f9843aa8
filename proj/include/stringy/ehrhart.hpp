#pragma once

#include "stringy/polytope.hpp"

namespace stringy {

// Numerator coefficients ψ_0..ψ_d of the Ehrhart series over (1−t)^{d+1}.
struct HStarVector {
  std::vector<Integer> psi;
  int degree = 0;  // largest index with ψ ≠ 0
};

// |kΔ ∩ N| for k = 0..kmax.
std::vector<Integer> dilate_counts(const Polytope& p, int kmax);

// ψ by binomial inversion of d+1 dilate counts; ψ_0 = 1, all entries ≥ 0.
// Lower-dimensional polytopes are measured in their saturated chart.
HStarVector hstar(const Polytope& p);

std::vector<Integer> hstar_coefficients(const Polytope& p);

// d + 1 − degree(h*): the first dilate with an interior lattice point.
int codegree(const Polytope& p);

}  // namespace stringy
