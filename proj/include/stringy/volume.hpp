#pragma once

#include "stringy/polytope.hpp"

namespace stringy {

// Lattice point of the half-open parallelepiped {Σ λᵢuᵢ : λᵢ ∈ (0,1]} of a
// simplicial cone with primitive generators uᵢ.
struct BoxPoint {
  IVec point;
  RVec lambda;
};

// dim! × Euclidean volume measured in a saturated chart of the affine hull
// (covolume-1 normalization); exact, integral for lattice polytopes.  A point
// has volume 1, the empty polytope 0.
Rational normalized_volume(const Polytope& p);

// Same, relative to an explicit saturated chart (rows).  Returns 0 when
// dim(p) < rank(chart); errors when p does not fit the chart.
Rational normalized_volume(const Polytope& p, const IMat& chart_rows);

// v(σ) of the cone spanned by the columns of `rays` (primitive generators):
// the normalized volume of conv(0, rays) w.r.t. span ∩ ℤ^d.  The zero cone
// (no columns) has volume 1.
Integer cone_volume_of_rays(const IMat& rays);

// All box points of a simplicial cone; |result| equals the cone volume.
std::vector<BoxPoint> box_points(const IMat& rays);

// Normalized mixed volume: Σ_{∅≠S} (−1)^{k−|S|} vol_k(Σ_{i∈S} Pᵢ) in the given
// chart; the diagonal reproduces normalized_volume.
Rational mixed_volume(const std::vector<Polytope>& polys, const IMat& chart_rows);

// Convenience overload for full-dimensional polytopes in ambient space.
Rational mixed_volume(const std::vector<Polytope>& polys);

}  // namespace stringy
