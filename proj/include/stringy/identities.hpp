#pragma once

#include "stringy/stringy_e.hpp"

#include <string>

namespace stringy {

// One exact identity check: both sides evaluated through disjoint code paths,
// pass ⇔ lhs = rhs, with per-face / per-point witness contributions.
struct IdentityReport {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool pass = false;
  std::vector<std::pair<std::string, Rational>> witnesses;
  bool reflexive = false;  // meaningful for ldp12
};

// v(Δ) + v(Δ*) = 12 Σ_{n∈Δ∩N} (κ(n)+1)² for an LDP polygon; equality with 12
// exactly in the reflexive case, and never below 12.
IdentityReport verify_ldp12(const Polytope& delta);

// v(Δ) + v(Δ*) = 12 for 2-dimensional reflexive Δ.
IdentityReport verify_refl2(const Polytope& delta);

// Σ_{dim θ = 1} v(θ)·v(θ*) = 24 for 3-dimensional reflexive Δ.
IdentityReport verify_refl3(const Polytope& delta);

// 12·|∂Δ ∩ N| = 2·v(Δ) + Σ_{dim θ = 2} v(θ)·v(θ*) for 4-dimensional
// reflexive Δ; the _sym variant sums the equations of Δ and Δ*.
IdentityReport verify_refl4(const Polytope& delta);
IdentityReport verify_refl4_sym(const Polytope& delta);

// 24 = Σ_{dim θ = r} v(θ)·v(θ*) + r(1−r)/2·v(Δ) for Gorenstein Δ of index
// r = d−2.
IdentityReport verify_gor24(const Polytope& delta);

// 12 = Σ_{dim θ = r−1} v(θ)·v(θ*) + (r(1−r)+2)/2·v(Δ) for Gorenstein Δ of
// index r = d−1.
IdentityReport verify_gor12(const Polytope& delta);

// Coefficients of E_str of the face fan equal the h*-vector, entrywise.
IdentityReport verify_hodgepsi(const Polytope& delta);

// Σ ψ_α(Δ)(α−d/2)² = d/12·v(Δ) + 1/6·Σ_{dim θ = d−2} v(θ)·v(θ*) for
// reflexive Δ, with the left side from the Ehrhart h* and the right side
// from dual-face volumes.
IdentityReport verify_lw_reflexive(const Polytope& delta);

}  // namespace stringy
