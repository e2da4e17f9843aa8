#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "stringy/fan.hpp"
#include "stringy/volume.hpp"

#include <random>

using namespace stringy;
using namespace stringy::fixtures;

namespace {

IMat cols(std::initializer_list<std::initializer_list<long>> v) {
  const Eigen::Index d = static_cast<Eigen::Index>(v.begin()->size());
  IMat m(d, static_cast<Eigen::Index>(v.size()));
  Eigen::Index j = 0;
  for (const auto& c : v) {
    Eigen::Index i = 0;
    for (long t : c) m(i++, j) = t;
    ++j;
  }
  return m;
}

}  // namespace

TEST_CASE("normalized volumes of the fixtures") {
  CHECK(normalized_volume(F1()) == 3);
  CHECK(normalized_volume(F1().polar_dual()) == 9);
  CHECK(normalized_volume(F3().polar_dual()) == rat(25, 3));
  CHECK(normalized_volume(F5().polar_dual()) == 625);
  CHECK(normalized_volume(C3()) == 48);
  CHECK(normalized_volume(C4()) == 384);
  CHECK(normalized_volume(F6()) == 32);
}

TEST_CASE("volume of a lower-dimensional face uses the induced lattice") {
  // An edge of F5* has lattice length 5.
  Polytope d5 = F5().polar_dual();
  const Face& e = d5.face_lattice()[1].front();
  CHECK(normalized_volume(d5.face_polytope(e)) == 5);
  // Points have volume 1, the empty polytope 0.
  CHECK(normalized_volume(Polytope::from_vertices(IMat(IMat::Zero(3, 1)))) == 1);
  CHECK(normalized_volume(Polytope::empty(3)) == 0);
}

TEST_CASE("volume against an explicit chart") {
  Polytope seg = make({{0, 0}, {3, 0}});
  IMat chart(1, 2);
  chart << 1, 0;
  CHECK(normalized_volume(seg, chart) == 3);
  IMat chart2(2, 2);
  chart2 << 1, 0, 0, 1;
  CHECK(normalized_volume(seg, chart2) == 0);  // dim < rank(chart)
}

TEST_CASE("cone volumes") {
  CHECK(cone_volume_of_rays(cols({{1, 0}, {0, 1}})) == 1);
  CHECK(cone_volume_of_rays(cols({{1, 0}, {-1, -2}})) == 2);
  CHECK(cone_volume_of_rays(IMat(2, 0)) == 1);  // v({0}) = 1
  // Non-simplicial: cone over a cube facet.
  CHECK(cone_volume_of_rays(cols({{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1}})) == 8);
  // Lower-dimensional cone in a bigger space.
  CHECK(cone_volume_of_rays(cols({{1, 0, 0}, {1, 2, 0}})) == 2);
}

TEST_CASE("box points of small cones") {
  auto unimod = box_points(cols({{1, 0}, {0, 1}}));
  REQUIRE(unimod.size() == 1);
  CHECK(unimod[0].point == cols({{1, 1}}).col(0));
  CHECK(unimod[0].lambda(0) == 1);
  CHECK(unimod[0].lambda(1) == 1);

  auto two = box_points(cols({{1, 0}, {-1, -2}}));
  REQUIRE(two.size() == 2);
  CHECK(two[0].point == cols({{0, -2}}).col(0));
  CHECK(two[1].point == cols({{0, -1}}).col(0));
  CHECK(two[1].lambda(0) == rat(1, 2));
  CHECK(two[1].lambda(1) == rat(1, 2));

  auto ray = box_points(cols({{1, 0}}));
  REQUIRE(ray.size() == 1);
  CHECK(ray[0].point == cols({{1, 0}}).col(0));

  CHECK_THROWS(box_points(cols({{1, 0}, {-1, 0}})));
}

TEST_CASE("box point count equals the cone volume") {
  for (const Polytope& p : {F2(), F3(), C3()}) {
    Fan f = pulling_subdivision(face_fan(p));
    for (const auto& bucket : f.cones())
      for (const Cone& c : bucket) {
        IMat rays = f.cone_ray_matrix(c);
        CHECK(Integer(box_points(rays).size()) == cone_volume_of_rays(rays));
      }
  }
}

TEST_CASE("2d box involution pairs interior points with kappa sum -2") {
  for (const Polytope& p : {F2(), F3()}) {
    Fan f = face_fan(p);
    for (const Cone& c : f.maximal_cones()) {
      IMat rays = f.cone_ray_matrix(c);
      auto box = box_points(rays);
      for (const BoxPoint& b : box) {
        if (b.lambda(0) == 1 || b.lambda(1) == 1) continue;  // interior of the box only
        IVec mirror = rays.col(0) + rays.col(1) - b.point;
        bool found = false;
        for (const BoxPoint& b2 : box)
          if (b2.point == mirror) {
            // κ(n) + κ(n*) = −2 with κ(n) = −Σλ
            Rational k1 = -(b.lambda(0) + b.lambda(1));
            Rational k2 = -(b2.lambda(0) + b2.lambda(1));
            CHECK(k1 + k2 == rat(-2));
            found = true;
          }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("mixed volume examples") {
  Polytope t = unit_simplex(2);
  CHECK(mixed_volume({t, t}) == 1);
  CHECK(mixed_volume({t, t.dilate(2)}) == 2);
  CHECK(mixed_volume({make({{0, 0}, {1, 0}}), make({{0, 0}, {0, 1}})}) == 1);
}

TEST_CASE("mixed volume properties on random instances") {
  std::mt19937 rng(20240811);
  auto random_polytope = [&](int d) {
    std::uniform_int_distribution<long> coord(-3, 3);
    while (true) {
      IMat m(d, d + 3);
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (int i = 0; i < d; ++i) m(i, j) = coord(rng);
      Polytope p = Polytope::from_vertices(m);
      if (p.dim() == d) return p;
    }
  };

  for (int trial = 0; trial < 10; ++trial) {
    int d = (trial % 2 == 0) ? 2 : 3;
    std::vector<Polytope> polys;
    for (int i = 0; i < d; ++i) polys.push_back(random_polytope(d));

    // diagonal = normalized volume
    std::vector<Polytope> diag(static_cast<size_t>(d), polys[0]);
    CHECK(mixed_volume(diag) == normalized_volume(polys[0]));

    // symmetry
    std::vector<Polytope> perm = polys;
    std::rotate(perm.begin(), perm.begin() + 1, perm.end());
    Rational mv = mixed_volume(polys);
    CHECK(mixed_volume(perm) == mv);

    // multilinearity in the first slot
    Polytope q = random_polytope(d);
    std::vector<Polytope> with_sum = polys;
    with_sum[0] = minkowski_sum(polys[0], q);
    std::vector<Polytope> with_q = polys;
    with_q[0] = q;
    CHECK(mixed_volume(with_sum) == mv + mixed_volume(with_q));
  }
}
