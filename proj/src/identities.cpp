#include "stringy/identities.hpp"

#include "stringy/ehrhart.hpp"

#include <stdexcept>

namespace stringy {

namespace {

std::string face_label(const Polytope& p, const Face& f) {
  std::string s = "conv{";
  for (size_t i = 0; i < f.verts.size(); ++i) {
    if (i) s += ", ";
    s += "(";
    for (Eigen::Index t = 0; t < p.ambient_dim(); ++t) {
      if (t) s += ",";
      s += to_string(p.vertex(f.verts[static_cast<size_t>(i)])(t));
    }
    s += ")";
  }
  return s + "}";
}

// Σ over faces of the given dimension of v(θ)·v(θ*), through the reflexive
// polar pairing, with witnesses.
Rational dual_face_sum(const Polytope& delta, const Polytope& dual, int dim,
                       std::vector<std::pair<std::string, Rational>>* witnesses) {
  Rational total = 0;
  for (const Face& f : delta.face_lattice()[static_cast<size_t>(dim)]) {
    if (f.dim == delta.dim()) continue;
    Face g = delta.dual_face(f, dual);
    Rational term = normalized_volume(delta.face_polytope(f)) * normalized_volume(dual.face_polytope(g));
    if (witnesses) witnesses->emplace_back(face_label(delta, f), term);
    total += term;
  }
  return total;
}

// Same through the Gorenstein dual model.
Rational gorenstein_face_sum(const Polytope& delta, const GorensteinDual& gd, int dim,
                             std::vector<std::pair<std::string, Rational>>* witnesses) {
  Rational total = 0;
  const auto& bucket = delta.face_lattice()[static_cast<size_t>(dim)];
  for (size_t i = 0; i < bucket.size(); ++i) {
    if (bucket[i].dim == delta.dim()) continue;
    const Face& df = gd.dual_of[static_cast<size_t>(dim)][i];
    Rational term =
        normalized_volume(delta.face_polytope(bucket[i])) * normalized_volume(gd.dual.face_polytope(df));
    if (witnesses) witnesses->emplace_back(face_label(delta, bucket[i]), term);
    total += term;
  }
  return total;
}

void require_reflexive(const Polytope& delta, int dim) {
  if (delta.dim() != dim) throw std::domain_error("wrong dimension");
  if (!delta.is_reflexive()) throw std::domain_error("not reflexive");
}

}  // namespace

IdentityReport verify_ldp12(const Polytope& delta) {
  if (delta.dim() != 2 || delta.ambient_dim() != 2) throw std::domain_error("not an LDP polygon");
  if (!delta.has_interior_origin()) throw std::domain_error("not an LDP polygon");
  for (int j = 0; j < delta.vertex_count(); ++j) {
    IVec v = to_integer(RVec(delta.vertex(j)));
    if (content(v) != 1) throw std::domain_error("not an LDP polygon");
  }
  Fan fan = face_fan(delta);
  PLFunction kappa = canonical_kappa(fan);

  IdentityReport r;
  r.name = "ldp12";
  r.reflexive = delta.is_reflexive();
  r.lhs = normalized_volume(delta) + normalized_volume(delta.polar_dual());
  r.rhs = 0;
  for (const auto& lp : delta.lattice_points()) {
    Rational k = evaluate(fan, kappa, lp.p) + 1;
    Rational term = 12 * k * k;
    if (term != 0) {
      std::string label = "(";
      for (Eigen::Index t = 0; t < 2; ++t) label += (t ? "," : "") + to_string(lp.p(t));
      r.witnesses.emplace_back(label + ")", term);
    }
    r.rhs += term;
  }
  r.pass = r.lhs == r.rhs && r.lhs >= 12 && ((r.lhs == 12) == r.reflexive);
  return r;
}

IdentityReport verify_refl2(const Polytope& delta) {
  require_reflexive(delta, 2);
  IdentityReport r;
  r.name = "refl2";
  Rational v = normalized_volume(delta);
  Rational vd = normalized_volume(delta.polar_dual());
  r.witnesses.emplace_back("v(P)", v);
  r.witnesses.emplace_back("v(P*)", vd);
  r.lhs = v + vd;
  r.rhs = 12;
  r.pass = r.lhs == r.rhs;
  return r;
}

IdentityReport verify_refl3(const Polytope& delta) {
  require_reflexive(delta, 3);
  IdentityReport r;
  r.name = "refl3";
  Polytope dual = delta.polar_dual();
  r.lhs = dual_face_sum(delta, dual, 1, &r.witnesses);
  r.rhs = 24;
  r.pass = r.lhs == r.rhs;
  return r;
}

IdentityReport verify_refl4(const Polytope& delta) {
  require_reflexive(delta, 4);
  IdentityReport r;
  r.name = "refl4";
  Integer boundary = delta.lattice_point_count() - delta.interior_lattice_point_count();
  r.lhs = Rational(12 * boundary);
  Polytope dual = delta.polar_dual();
  r.rhs = 2 * normalized_volume(delta) + dual_face_sum(delta, dual, 2, &r.witnesses);
  r.pass = r.lhs == r.rhs;
  return r;
}

IdentityReport verify_refl4_sym(const Polytope& delta) {
  require_reflexive(delta, 4);
  IdentityReport r;
  r.name = "refl4sym";
  Polytope dual = delta.polar_dual();
  Integer boundary = delta.lattice_point_count() - delta.interior_lattice_point_count();
  Integer boundary_dual = dual.lattice_point_count() - dual.interior_lattice_point_count();
  r.lhs = Rational(12 * (boundary + boundary_dual));
  r.rhs = 2 * (normalized_volume(delta) + normalized_volume(dual)) +
          dual_face_sum(delta, dual, 1, &r.witnesses) + dual_face_sum(delta, dual, 2, &r.witnesses);
  r.pass = r.lhs == r.rhs;
  return r;
}

IdentityReport verify_gor24(const Polytope& delta) {
  auto gd = delta.gorenstein_data();
  const int d = delta.dim();
  if (!gd || gd->index != d - 2) throw std::domain_error("wrong index");
  GorensteinDual dual = gorenstein_dual(delta, *gd);
  const int r_idx = gd->index;

  IdentityReport r;
  r.name = "gor24";
  r.lhs = 24;
  Rational correction = rat(r_idx * (1 - r_idx), 2) * normalized_volume(delta);
  r.rhs = gorenstein_face_sum(delta, dual, r_idx, &r.witnesses) + correction;
  r.witnesses.emplace_back("r(1-r)/2 v(P)", correction);
  r.pass = r.lhs == r.rhs;
  return r;
}

IdentityReport verify_gor12(const Polytope& delta) {
  auto gd = delta.gorenstein_data();
  const int d = delta.dim();
  if (!gd || gd->index != d - 1) throw std::domain_error("wrong index");
  GorensteinDual dual = gorenstein_dual(delta, *gd);
  const int r_idx = gd->index;

  IdentityReport r;
  r.name = "gor12";
  r.lhs = 12;
  Rational correction = rat(r_idx * (1 - r_idx) + 2, 2) * normalized_volume(delta);
  r.rhs = gorenstein_face_sum(delta, dual, r_idx - 1, &r.witnesses) + correction;
  r.witnesses.emplace_back("(r(1-r)+2)/2 v(P)", correction);
  r.pass = r.lhs == r.rhs;
  return r;
}

IdentityReport verify_hodgepsi(const Polytope& delta) {
  if (!delta.is_reflexive()) throw std::domain_error("not reflexive");
  IdentityReport r;
  r.name = "hodgepsi";
  StringyE e = stringy_e(face_fan(delta));
  HStarVector h = hstar(delta);

  bool equal = true;
  Rational lhs_sum = 0, rhs_sum = 0;
  for (int a = 0; a <= delta.dim(); ++a) {
    Integer psi_fan = e.coefficient(Rational(a));
    Integer psi_ehr = h.psi[static_cast<size_t>(a)];
    r.witnesses.emplace_back("psi_" + std::to_string(a) + " fan", Rational(psi_fan));
    r.witnesses.emplace_back("psi_" + std::to_string(a) + " h*", Rational(psi_ehr));
    lhs_sum += Rational(psi_fan);
    rhs_sum += Rational(psi_ehr);
    if (psi_fan != psi_ehr) equal = false;
  }
  // Integral exponents only: fractional terms would break the equality.
  for (const auto& [alpha, c] : e.terms) {
    (void)c;
    if (!is_integral(alpha)) equal = false;
  }
  r.lhs = lhs_sum;
  r.rhs = rhs_sum;
  r.pass = equal && r.lhs == r.rhs;
  return r;
}

IdentityReport verify_lw_reflexive(const Polytope& delta) {
  if (!delta.is_reflexive()) throw std::domain_error("not reflexive");
  const int d = delta.dim();
  IdentityReport r;
  r.name = "lw";
  HStarVector h = hstar(delta);
  Rational half_d = rat(d, 2);
  r.lhs = 0;
  for (int a = 0; a <= d; ++a)
    r.lhs += Rational(h.psi[static_cast<size_t>(a)]) * (Rational(a) - half_d) * (Rational(a) - half_d);

  Polytope dual = delta.polar_dual();
  Rational face_sum = dual_face_sum(delta, dual, d - 2, &r.witnesses);
  r.rhs = rat(d, 12) * normalized_volume(delta) + rat(1, 6) * face_sum;
  r.pass = r.lhs == r.rhs;
  return r;
}

}  // namespace stringy
