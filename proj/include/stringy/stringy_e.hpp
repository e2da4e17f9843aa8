#pragma once

#include "stringy/fan.hpp"

#include <map>

namespace stringy {

// E_str as a finite sum Σ ψ_α t^α in t = uv, with rational exponents whose
// denominators divide the Gorenstein index.  Coefficients are nonzero,
// symmetric (ψ_α = ψ_{d−α}), and ψ_0 = ψ_d = 1.
struct StringyE {
  std::map<Rational, Integer> terms;
  int d = 0;

  Integer coefficient(const Rational& alpha) const {
    auto it = terms.find(alpha);
    return it == terms.end() ? Integer(0) : it->second;
  }
};

// c_k^str as a formal cycle: coefficient v(σ) on every k-dimensional cone.
struct ChernCycle {
  int k = 0;
  std::vector<std::pair<Cone, Integer>> terms;
};

// Both shapes of the stringy Libgober–Wood identity, each side computed
// through an independent path.
struct LWReport {
  Rational lhs_second_derivative;  // Σ α(α−1) ψ_α
  Rational lhs_boxform;            // the box-point sums over Σ'(d−2..d)
  Rational lhs_centered;           // Σ ψ_α (α − d/2)²
  Rational rhs_second_derivative;  // (3d²−5d)/12 v(Σ) + 1/6 c₁·c_{d−1}
  Rational rhs_centered;           // d/12 v(Σ) + 1/6 c₁·c_{d−1}
  Integer fan_volume;              // v(Σ)
  Rational c1_cd1;                 // c₁(X)·c_{d−1}^str(X)
  bool pass = false;
};

// Box-point expansion over a simplicial subdivision with the same rays;
// independent of the subdivision choice.
StringyE stringy_e(const Fan& fan);

// Closed 2d form: scan of lattice points n with κ(n) ≥ −1.
StringyE stringy_e_2d(const Fan& fan);

// v(Σ) = Σ_{σ maximal} v(σ).
Integer stringy_euler(const Fan& fan);

ChernCycle stringy_chern(const Fan& fan, int k);

// c₁(X)·c_{d−1}^str(X) = Σ_walls v(σ)·l_{−K}(σ).
Rational inter_c1(const Fan& fan);

// [D]^k·c_{d−k}^str(X) = Σ_{σ∈Σ(d−k)} v(σ)·v(Δ_D^σ); D semiample Q-Cartier.
Rational inter_power(const Fan& fan, const TorusDivisor& d, int k);

// [D₁]···[D_k]·c_{d−k}^str(X) via mixed volumes of the faces Δ_{Dᵢ}^σ.
Rational inter_mixed(const Fan& fan, const std::vector<TorusDivisor>& ds);

// Stringy Euler number of a generic hypersurface of class [D] (semiample
// Cartier): the alternating sum over Σ(d−1−k).  When [D] equals the
// anticanonical class the two trailing terms must cancel; this is verified.
Rational euler_hypersurface(const Fan& fan, const TorusDivisor& d);

// r-fold complete intersection of class [D].
Rational euler_ci(const Fan& fan, const TorusDivisor& d, int r);

// Calabi-Yau complete intersection attached to a Gorenstein polytope of
// index r, evaluated through the dual-face pairing.
Rational euler_cy_ci(const Polytope& delta, int r);

Rational lw_lhs(const Fan& fan);
Rational lw_lhs_boxform(const Fan& fan);
LWReport lw_verify(const Fan& fan);

}  // namespace stringy
