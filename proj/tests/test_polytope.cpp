#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "stringy/ehrhart.hpp"
#include "stringy/polytope.hpp"
#include "stringy/volume.hpp"

using namespace stringy;
using namespace stringy::fixtures;

namespace {

std::vector<int> fvector(const Polytope& p) {
  std::vector<int> f;
  for (const auto& bucket : p.face_lattice()) f.push_back(static_cast<int>(bucket.size()));
  return f;
}

bool has_facet(const Polytope& p, std::initializer_list<long> normal, long off_num, long off_den = 1) {
  for (const auto& f : p.facet_description()) {
    IVec n(static_cast<Eigen::Index>(normal.size()));
    Eigen::Index i = 0;
    for (long t : normal) n(i++) = t;
    if (f.normal == n && f.offset == rat(off_num, off_den)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("from_vertices removes duplicates and interior points") {
  Polytope t = make({{0, 0}, {1, 0}, {0, 1}, {0, 0}});
  CHECK(t.vertex_count() == 3);

  Polytope seg = make({{0, 0}, {2, 0}, {1, 0}});
  CHECK(seg.vertex_count() == 2);
  CHECK(seg.dim() == 1);

  // Canonical order is input-independent.
  Polytope a = make({{1, 0}, {0, 1}, {-1, -1}});
  Polytope b = make({{-1, -1}, {1, 0}, {0, 1}});
  CHECK(a.vertices() == b.vertices());
}

TEST_CASE("facet description of F1") {
  Polytope p = F1();
  REQUIRE(p.facet_description().size() == 3);
  CHECK(has_facet(p, {-1, -1}, -1));
  CHECK(has_facet(p, {2, -1}, -1));
  CHECK(has_facet(p, {-1, 2}, -1));
}

TEST_CASE("facet description of the unit square") {
  Polytope p = make({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  REQUIRE(p.facet_description().size() == 4);
  CHECK(has_facet(p, {1, 0}, 0));
  CHECK(has_facet(p, {0, 1}, 0));
  CHECK(has_facet(p, {-1, 0}, -1));
  CHECK(has_facet(p, {0, -1}, -1));
}

TEST_CASE("facet description of F3") {
  Polytope p = F3();
  REQUIRE(p.facet_description().size() == 3);
  CHECK(has_facet(p, {-1, -1}, -1));
  CHECK(has_facet(p, {4, -1}, -1));
  CHECK(has_facet(p, {-3, 2}, -3));
}

TEST_CASE("facets support the vertex set") {
  for (const Polytope& p : {F1(), F3(), F4(), C3(), F6()}) {
    for (const auto& f : p.facet_description()) {
      int on = 0;
      for (int j = 0; j < p.vertex_count(); ++j) {
        Rational v = 0;
        for (Eigen::Index t = 0; t < p.ambient_dim(); ++t) v += p.vertex(j)(t) * Rational(f.normal(t));
        CHECK(v >= f.offset);
        if (v == f.offset) ++on;
      }
      CHECK(on >= p.dim());
    }
  }
}

TEST_CASE("face lattice f-vectors") {
  CHECK(fvector(F4()) == std::vector<int>{4, 6, 4, 1});
  CHECK(fvector(C3()) == std::vector<int>{8, 12, 6, 1});
  CHECK(fvector(F6()) == std::vector<int>{8, 16, 14, 6, 1});
}

TEST_CASE("lattice points of the small triangles") {
  CHECK(F1().lattice_point_count() == 4);
  CHECK(F2().lattice_point_count() == 5);
  CHECK(F3().lattice_point_count() == 5);

  // (0,-1) is on the boundary of F2 but interior to F3.
  CHECK(F2().interior_lattice_point_count() == 1);
  CHECK(F3().interior_lattice_point_count() == 2);
}

TEST_CASE("lattice points of a lower-dimensional polytope") {
  Polytope seg = make({{0, 0, 2}, {3, 0, 2}});
  auto pts = seg.lattice_points();
  CHECK(pts.size() == 4);
  Polytope off = make({{1, 1}, {3, 2}});  // direction (2,1): endpoints only
  CHECK(off.lattice_point_count() == 2);
}

TEST_CASE("polar duality") {
  Polytope d1 = F1().polar_dual();
  CHECK(d1.vertex_count() == 3);
  CHECK(d1.is_lattice());
  CHECK(normalized_volume(d1) == 9);

  Polytope d7 = F7().polar_dual();
  CHECK(d7.vertex_count() == 4);
  CHECK(normalized_volume(d7) == 8);  // the square [-1,1]^2

  Polytope d3 = F3().polar_dual();
  CHECK(!d3.is_lattice());
  bool found = false;
  for (int j = 0; j < d3.vertex_count(); ++j)
    if (d3.vertex(j)(0) == rat(-1) && d3.vertex(j)(1) == rat(2, 3)) found = true;
  CHECK(found);
}

TEST_CASE("polar duality is an involution") {
  for (const Polytope& p : {F1(), F2(), F3(), F7(), F4(), C3()}) {
    Polytope dd = p.polar_dual().polar_dual();
    CHECK(dd.vertices() == p.vertices());
  }
}

TEST_CASE("dual undefined without an interior origin") {
  CHECK_THROWS_WITH(unit_simplex(2).polar_dual(), "dual undefined");
}

TEST_CASE("reflexivity") {
  CHECK(F1().is_reflexive());
  CHECK(F2().is_reflexive());
  CHECK(!F3().is_reflexive());
  CHECK(C4().is_reflexive());
  CHECK(C4().polar_dual().is_reflexive());
}

TEST_CASE("dual faces pair dimensions to d-1") {
  Polytope p = F4();
  Polytope d = p.polar_dual();
  for (const auto& bucket : p.face_lattice()) {
    for (const Face& f : bucket) {
      if (f.dim == p.dim()) continue;
      Face g = p.dual_face(f, d);
      CHECK(f.dim + g.dim == p.dim() - 1);
      // Inverting from the dual side returns the original face.
      Polytope dd = d.polar_dual();
      Face back = d.dual_face(g, dd);
      CHECK(back.verts == f.verts);
    }
  }
}

TEST_CASE("dual face of an F1 vertex") {
  Polytope p = F1();
  Polytope d = p.polar_dual();
  // vertex (1,0) is verts_ index: find it
  int vi = -1;
  for (int j = 0; j < p.vertex_count(); ++j)
    if (p.vertex(j)(0) == 1 && p.vertex(j)(1) == 0) vi = j;
  REQUIRE(vi >= 0);
  Face g = p.dual_face(Face{{vi}, 0}, d);
  CHECK(g.dim == 1);
  // θ* = {y ∈ Δ* : y₁ = −1}: the edge between (−1,−1) and (−1,2)
  std::vector<RVec> ends;
  for (int j : g.verts) ends.push_back(d.vertex(j));
  bool ok = (ends[0](0) == -1 && ends[0](1) == -1 && ends[1](0) == -1 && ends[1](1) == 2) ||
            (ends[1](0) == -1 && ends[1](1) == -1 && ends[0](0) == -1 && ends[0](1) == 2);
  CHECK(ok);
}

TEST_CASE("dual face of a cube edge") {
  Polytope p = C3();
  Polytope d = p.polar_dual();
  // find edge (1,1,1)-(1,1,-1)
  for (const Face& e : p.face_lattice()[1]) {
    RVec a = p.vertex(e.verts[0]), b = p.vertex(e.verts[1]);
    if (a(0) == 1 && a(1) == 1 && b(0) == 1 && b(1) == 1) {
      Face g = p.dual_face(e, d);
      CHECK(g.dim == 1);
      std::vector<RVec> ends;
      for (int j : g.verts) ends.push_back(d.vertex(j));
      // duals of the facets x1=1 and x2=1 are −e1 and −e2
      CHECK(((ends[0](0) == -1 && ends[1](1) == -1) || (ends[0](1) == -1 && ends[1](0) == -1)));
    }
  }
}

TEST_CASE("dual face of an F4 edge and vertex") {
  Polytope p = F4();
  Polytope d = p.polar_dual();
  // edge conv{e1,e2}
  for (const Face& e : p.face_lattice()[1]) {
    RVec a = p.vertex(e.verts[0]), b = p.vertex(e.verts[1]);
    auto is_e = [](const RVec& v, int i) {
      for (Eigen::Index t = 0; t < 3; ++t)
        if (v(t) != ((t == i) ? 1 : 0)) return false;
      return true;
    };
    if ((is_e(a, 0) && is_e(b, 1)) || (is_e(a, 1) && is_e(b, 0))) {
      Face g = p.dual_face(e, d);
      CHECK(g.dim == 1);
      CHECK(normalized_volume(d.face_polytope(g)) == 4);
    }
  }
  // a vertex dualizes to a 2-face of normalized volume 16
  Face v0{{0}, 0};
  Face g = p.dual_face(v0, d);
  CHECK(g.dim == 2);
  CHECK(normalized_volume(d.face_polytope(g)) == 16);
}

TEST_CASE("gorenstein data") {
  auto g1 = F1().gorenstein_data();
  REQUIRE(g1.has_value());
  CHECK(g1->index == 1);
  CHECK(g1->shift == IVec(IVec::Zero(2)));

  auto g6 = F6().gorenstein_data();
  REQUIRE(g6.has_value());
  CHECK(g6->index == 2);
  CHECK(g6->shift == IVec(IVec::Constant(4, 1)));

  auto gs = unit_simplex(3).gorenstein_data();
  REQUIRE(gs.has_value());
  CHECK(gs->index == 4);

  CHECK(!F3().gorenstein_data().has_value());
}

TEST_CASE("gorenstein dual") {
  // Index 1 reduces to reflexive polar duality.
  Polytope p = F1();
  auto gd = p.gorenstein_data();
  REQUIRE(gd.has_value());
  GorensteinDual dual = gorenstein_dual(p, *gd);
  CHECK(dual.dual.vertices() == p.polar_dual().vertices());

  // F6: pairing satisfies dim θ + dim θ* = 3.
  Polytope f6 = F6();
  auto g6 = f6.gorenstein_data();
  GorensteinDual d6 = gorenstein_dual(f6, *g6);
  for (int k = 0; k < f6.dim(); ++k) {
    const auto& bucket = f6.face_lattice()[static_cast<size_t>(k)];
    for (size_t i = 0; i < bucket.size(); ++i) CHECK(bucket[i].dim + d6.dual_of[static_cast<size_t>(k)][i].dim == 3);
  }

  // 3*(unit 5-simplex) is Gorenstein of index 2 (6-fold dilate is reflexive).
  Polytope s = unit_simplex(5).dilate(3);
  auto gs = s.gorenstein_data();
  REQUIRE(gs.has_value());
  CHECK(gs->index == 2);
  CHECK_NOTHROW(gorenstein_dual(s, *gs));
}

TEST_CASE("minkowski sums and dilates") {
  Polytope t = unit_simplex(2);
  CHECK(minkowski_sum(t, t).vertices() == t.dilate(2).vertices());

  Polytope d = F1().dilate(2);
  CHECK(d.vertex_count() == 3);
  CHECK(normalized_volume(d) == 12);

  Polytope sq = minkowski_sum(make({{0, 0}, {1, 0}}), make({{0, 0}, {0, 1}}));
  CHECK(sq.vertex_count() == 4);
  CHECK(normalized_volume(sq) == 2);
}

TEST_CASE("lattice point counts agree with Ehrhart evaluations") {
  for (const Polytope& p : {F1(), F2(), F4()}) {
    const int d = p.dim();
    auto counts = dilate_counts(p, d + 2);
    HStarVector h = hstar(p);
    // L(k) = Σ_j ψ_j · binom(k + d - j, d)
    for (int k = 0; k <= d + 2; ++k) {
      Integer expect = 0;
      for (int j = 0; j <= d; ++j) expect += h.psi[static_cast<size_t>(j)] * binomial(k + d - j, d);
      CHECK(counts[static_cast<size_t>(k)] == expect);
    }
  }
}

TEST_CASE("gorenstein data matches h*-palindromy") {
  for (const Polytope& p : {F1(), F2(), F3(), F6(), unit_simplex(2), unit_simplex(3), C3()}) {
    auto gd = p.gorenstein_data();
    HStarVector h = hstar(p);
    bool pal = true;
    for (int j = 0; j <= h.degree; ++j)
      if (h.psi[static_cast<size_t>(j)] != h.psi[static_cast<size_t>(h.degree - j)]) pal = false;
    CHECK(gd.has_value() == pal);
    if (gd) CHECK(gd->index == p.dim() + 1 - h.degree);
  }
}
