#include "stringy/stringy_e.hpp"

#include "stringy/ehrhart.hpp"

#include <stdexcept>

namespace stringy {

namespace {

void add_term(std::map<Rational, Integer>& terms, const Rational& alpha, const Integer& c) {
  auto it = terms.emplace(alpha, 0).first;
  it->second += c;
  if (it->second == 0) terms.erase(it);
}

void validate(StringyE& e) {
  const Rational d(e.d);
  if (e.coefficient(0) != 1 || e.coefficient(d) != 1)
    throw std::logic_error("stringy E-function misses psi_0 = psi_d = 1");
  for (const auto& [alpha, c] : e.terms) {
    if (alpha < 0 || alpha > d) throw std::logic_error("stringy exponent out of range");
    if (c != e.coefficient(d - alpha)) throw std::logic_error("stringy E-function not symmetric");
  }
}

}  // namespace

StringyE stringy_e(const Fan& fan) {
  canonical_kappa(fan);  // Q-Gorenstein gate
  const int d = fan.dim();
  Fan sub = fan.simplicial() ? fan : pulling_subdivision(fan);

  StringyE e;
  e.d = d;
  // Σ over all cones σ' of the subdivision of (t−1)^{d−s} Σ_box t^{s+κ(n')},
  // with κ(n') = −Σ λᵢ since κ is −1 on every ray.
  for (const auto& bucket : sub.cones()) {
    for (const Cone& c : bucket) {
      const int s = c.dim;
      IMat rays = sub.cone_ray_matrix(c);
      for (const BoxPoint& b : box_points(rays)) {
        Rational kappa = 0;
        for (Eigen::Index i = 0; i < b.lambda.size(); ++i) kappa -= b.lambda(i);
        Rational base = Rational(s) + kappa;
        // expand (t−1)^{d−s} t^{base}
        for (int j = 0; j <= d - s; ++j) {
          Integer coef = binomial(d - s, j);
          if ((d - s - j) % 2 != 0) coef = -coef;
          add_term(e.terms, base + Rational(j), coef);
        }
      }
    }
  }
  validate(e);
  return e;
}

StringyE stringy_e_2d(const Fan& fan) {
  if (fan.dim() != 2) throw std::invalid_argument("closed form only in dimension 2");
  PLFunction kappa = canonical_kappa(fan);

  // {κ ≥ −1} is the polygon spanned by the rays.
  RMat pts(2, fan.ray_count());
  for (int i = 0; i < fan.ray_count(); ++i) pts.col(i) = to_rational(IVec(fan.ray(i)));
  Polytope delta = Polytope::from_vertices(pts);

  StringyE e;
  e.d = 2;
  add_term(e.terms, 0, 1);
  add_term(e.terms, 1, -2);
  add_term(e.terms, 2, 1);  // (t−1)²
  for (const auto& lp : delta.lattice_points()) {
    if (lp.p.isZero()) continue;
    Rational k = evaluate(fan, kappa, lp.p);
    if (k == -1) {
      add_term(e.terms, 1, 1);
    } else if (k > -1 && k < 0) {
      add_term(e.terms, Rational(2) + k, 1);
      add_term(e.terms, -k, 1);
    }
  }
  validate(e);
  return e;
}

Integer stringy_euler(const Fan& fan) { return fan.volume(); }

ChernCycle stringy_chern(const Fan& fan, int k) {
  if (k < 0 || k > fan.dim()) throw std::invalid_argument("Chern degree out of range");
  ChernCycle c;
  c.k = k;
  for (const Cone& sigma : fan.cones()[static_cast<size_t>(k)])
    c.terms.emplace_back(sigma, fan.cone_volume(sigma));
  return c;
}

Rational inter_c1(const Fan& fan) {
  TorusDivisor mk = anticanonical(fan);
  Rational total = 0;
  for (const Wall& w : fan.walls())
    total += Rational(fan.cone_volume(w.cone)) * wall_coefficient(fan, mk, w.cone);
  return total;
}

Rational inter_power(const Fan& fan, const TorusDivisor& d, int k) {
  if (k < 0 || k > fan.dim()) throw std::invalid_argument("intersection power out of range");
  if (!is_semiample(fan, d)) throw std::domain_error("divisor not semiample");
  Polytope delta = divisor_polytope(fan, d);
  Rational total = 0;
  for (const Cone& sigma : fan.cones()[static_cast<size_t>(fan.dim() - k)]) {
    Polytope face = divisor_face(fan, d, delta, sigma);
    if (face.is_empty()) continue;
    IMat chart = orthogonal_chart(fan, sigma);
    total += Rational(fan.cone_volume(sigma)) * normalized_volume(face, chart);
  }
  return total;
}

Rational inter_mixed(const Fan& fan, const std::vector<TorusDivisor>& ds) {
  const int k = static_cast<int>(ds.size());
  if (k < 1 || k > fan.dim()) throw std::invalid_argument("need between 1 and d divisors");
  std::vector<Polytope> polytopes;
  for (const TorusDivisor& d : ds) {
    if (!is_semiample(fan, d)) throw std::domain_error("divisor not semiample");
    polytopes.push_back(divisor_polytope(fan, d));
  }
  Rational total = 0;
  for (const Cone& sigma : fan.cones()[static_cast<size_t>(fan.dim() - k)]) {
    std::vector<Polytope> faces;
    bool empty = false;
    for (int i = 0; i < k; ++i) {
      Polytope f = divisor_face(fan, ds[static_cast<size_t>(i)], polytopes[static_cast<size_t>(i)], sigma);
      if (f.is_empty()) {
        empty = true;
        break;
      }
      faces.push_back(std::move(f));
    }
    if (empty) continue;
    IMat chart = orthogonal_chart(fan, sigma);
    total += Rational(fan.cone_volume(sigma)) * mixed_volume(faces, chart);
  }
  return total;
}

namespace {

void require_cartier(const Fan& fan, const TorusDivisor& d) {
  PLFunction pl = cartier_data(fan, d);
  for (const RVec& m : pl.m)
    if (!is_integral(m)) throw std::domain_error("divisor not Cartier");
}

// Whether [D] equals the anticanonical class: a_ρ − 1 = ⟨m, u_ρ⟩ for some m.
bool is_anticanonical_class(const Fan& fan, const TorusDivisor& d) {
  RMat a(fan.ray_count(), fan.dim());
  RVec rhs(fan.ray_count());
  for (int i = 0; i < fan.ray_count(); ++i) {
    a.row(i) = to_rational(IVec(fan.ray(i))).transpose();
    rhs(i) = d.a(i) - 1;
  }
  return solve_rational(a, rhs).has_value();
}

Rational face_volume_sum(const Fan& fan, const TorusDivisor& d, const Polytope& delta, int cone_dim) {
  Rational total = 0;
  for (const Cone& sigma : fan.cones()[static_cast<size_t>(cone_dim)]) {
    Polytope face = divisor_face(fan, d, delta, sigma);
    if (face.is_empty()) continue;
    IMat chart = orthogonal_chart(fan, sigma);
    total += Rational(fan.cone_volume(sigma)) * normalized_volume(face, chart);
  }
  return total;
}

}  // namespace

Rational euler_hypersurface(const Fan& fan, const TorusDivisor& d) {
  require_cartier(fan, d);
  if (!is_semiample(fan, d)) throw std::domain_error("divisor not semiample");
  const int dim = fan.dim();
  Polytope delta = divisor_polytope(fan, d);

  std::vector<Rational> sums(static_cast<size_t>(dim));  // by cone dimension, 0..d-1
  for (int cd = 0; cd < dim; ++cd) sums[static_cast<size_t>(cd)] = face_volume_sum(fan, d, delta, cd);

  Rational total = 0;
  for (int k = 0; k <= dim - 1; ++k) {
    Rational term = sums[static_cast<size_t>(dim - 1 - k)];
    total += (k % 2 == 0) ? term : -term;
  }

  if (is_anticanonical_class(fan, d)) {
    // The k = d−2 and k = d−1 contributions must cancel for an
    // anticanonical class; anything else indicates bad input data.
    if (sums[1] != sums[0])
      throw std::logic_error("anticanonical class without the expected cancellation");
  }
  return total;
}

Rational euler_ci(const Fan& fan, const TorusDivisor& d, int r) {
  if (r < 1 || r > fan.dim()) throw std::invalid_argument("complete intersection codimension out of range");
  require_cartier(fan, d);
  if (!is_semiample(fan, d)) throw std::domain_error("divisor not semiample");
  const int dim = fan.dim();
  Polytope delta = divisor_polytope(fan, d);
  Rational total = 0;
  for (int k = 0; k <= dim - r; ++k) {
    Rational term = Rational(binomial(k + r - 1, r - 1)) * face_volume_sum(fan, d, delta, dim - r - k);
    total += (k % 2 == 0) ? term : -term;
  }
  return total;
}

Rational euler_cy_ci(const Polytope& delta, int r) {
  auto gd = delta.gorenstein_data();
  if (!gd || gd->index != r) throw std::domain_error("polytope is not Gorenstein of the requested index");
  GorensteinDual dual = gorenstein_dual(delta, *gd);
  const int d = delta.dim();

  Rational total = 0;
  for (int k = 0; k <= d - r - 1; ++k) {
    Rational sum = 0;
    const auto& bucket = delta.face_lattice()[static_cast<size_t>(k + r)];
    for (size_t i = 0; i < bucket.size(); ++i) {
      if (bucket[i].dim == d) continue;
      const Face& df = dual.dual_of[static_cast<size_t>(k + r)][i];
      sum += normalized_volume(delta.face_polytope(bucket[i])) *
             normalized_volume(dual.dual.face_polytope(df));
    }
    Rational term = Rational(binomial(k + r - 1, r - 1)) * sum;
    total += (k % 2 == 0) ? term : -term;
  }
  Rational top = Rational(binomial(d - 1, r - 1)) * normalized_volume(delta);
  total += ((d - r) % 2 == 0) ? top : -top;
  return total;
}

Rational lw_lhs(const Fan& fan) {
  StringyE e = stringy_e(fan);
  Rational total = 0;
  for (const auto& [alpha, c] : e.terms) total += alpha * (alpha - 1) * Rational(c);
  return total;
}

Rational lw_lhs_boxform(const Fan& fan) {
  canonical_kappa(fan);
  const int d = fan.dim();
  Fan sub = fan.simplicial() ? fan : pulling_subdivision(fan);
  Rational total = 0;
  for (int s = std::max(0, d - 2); s <= d; ++s) {
    for (const Cone& c : sub.cones()[static_cast<size_t>(s)]) {
      IMat rays = sub.cone_ray_matrix(c);
      for (const BoxPoint& b : box_points(rays)) {
        Rational kappa = 0;
        for (Eigen::Index i = 0; i < b.lambda.size(); ++i) kappa -= b.lambda(i);
        if (s == d - 2) {
          total += 2;
        } else if (s == d - 1) {
          total += 2 * (Rational(d) + kappa - 1);
        } else {
          total += (Rational(d) + kappa) * (Rational(d) + kappa - 1);
        }
      }
    }
  }
  return total;
}

LWReport lw_verify(const Fan& fan) {
  const int d = fan.dim();
  StringyE e = stringy_e(fan);

  LWReport r;
  r.fan_volume = stringy_euler(fan);
  r.c1_cd1 = inter_c1(fan);

  r.lhs_second_derivative = 0;
  r.lhs_centered = 0;
  Rational half_d = rat(d, 2);
  for (const auto& [alpha, c] : e.terms) {
    r.lhs_second_derivative += alpha * (alpha - 1) * Rational(c);
    r.lhs_centered += (alpha - half_d) * (alpha - half_d) * Rational(c);
  }
  r.lhs_boxform = lw_lhs_boxform(fan);

  r.rhs_second_derivative = rat(3 * d * d - 5 * d, 12) * Rational(r.fan_volume) + rat(1, 6) * r.c1_cd1;
  r.rhs_centered = rat(d, 12) * Rational(r.fan_volume) + rat(1, 6) * r.c1_cd1;

  r.pass = r.lhs_second_derivative == r.rhs_second_derivative && r.lhs_centered == r.rhs_centered &&
           r.lhs_second_derivative == r.lhs_boxform;
  return r;
}

}  // namespace stringy
