#pragma once

#include "stringy/rational.hpp"

#include <optional>

namespace stringy {

// Basis of a saturated sublattice: rows generate exactly span ∩ ℤ^d, never a
// finite-index sublattice of it.
using SublatticeBasis = IMat;

Integer content(const IVec& v);

// v / gcd(coordinates); direction preserved.  Throws on the zero vector.
IVec primitive(const IVec& v);

// Column-style Hermite normal form H = A·U with U unimodular: pivots
// positive, entries left of a pivot reduced into [0, pivot).  Columns are
// ordered so pivots descend the rows; zero columns come last.
IMat hnf_cols(const IMat& a, IMat* transform = nullptr);

// Canonical basis (as rows, in Hermite form) of the lattice generated by the
// rows of `a`.
IMat row_basis(const IMat& a);

// Canonical basis (rows) of {x ∈ ℤ^cols : A x = 0}.
IMat integer_kernel(const IMat& a);

// Basis of (ℚ-span of the rows) ∩ ℤ^d, i.e. the saturation of the row span.
SublatticeBasis saturated_basis(const IMat& points_rows);

// Exact solve; returns a solution (free variables set to 0) or nullopt when
// inconsistent.  Unique solutions are returned exactly.
std::optional<RVec> solve_rational(const RMat& a, const RVec& b);

int rank(const RMat& a);
int rank(const IMat& a);

Rational det(const RMat& a);
Integer det(const IMat& a);

// Coordinates of x in the row basis B, i.e. the c with Bᵀc = x; nullopt when
// x is outside the ℚ-span.
std::optional<RVec> coordinates_in(const IMat& basis_rows, const RVec& x);

}  // namespace stringy
