#include "stringy/volume.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace stringy {

namespace {

// Pulling triangulation of a face, recursing over the face poset: pull the
// lowest vertex over the facets avoiding it.
void triangulate(const Polytope& p, const Face& f,
                 std::map<std::vector<int>, std::vector<std::vector<int>>>& memo) {
  if (memo.count(f.verts)) return;
  std::vector<std::vector<int>> simplices;
  if (static_cast<int>(f.verts.size()) == f.dim + 1) {
    simplices.push_back(f.verts);
  } else {
    int apex = f.verts.front();
    for (const Face& g : p.face_lattice()[static_cast<size_t>(f.dim - 1)]) {
      if (!std::includes(f.verts.begin(), f.verts.end(), g.verts.begin(), g.verts.end())) continue;
      if (std::binary_search(g.verts.begin(), g.verts.end(), apex)) continue;
      triangulate(p, g, memo);
      for (const auto& s : memo[g.verts]) {
        std::vector<int> t = s;
        t.push_back(apex);
        std::sort(t.begin(), t.end());
        simplices.push_back(std::move(t));
      }
    }
  }
  memo[f.verts] = std::move(simplices);
}

Rational simplex_det(const RMat& chart_verts, const std::vector<int>& simplex) {
  const Eigen::Index k = chart_verts.rows();
  RMat m(k, k);
  for (Eigen::Index j = 0; j < k; ++j)
    m.col(j) = chart_verts.col(simplex[static_cast<size_t>(j) + 1]) - chart_verts.col(simplex[0]);
  return abs(det(m));
}

}  // namespace

Rational normalized_volume(const Polytope& p) {
  if (p.is_empty()) return 0;
  if (p.dim() == 0) return 1;
  std::map<std::vector<int>, std::vector<std::vector<int>>> memo;
  const Face& top = p.full_face();
  triangulate(p, top, memo);
  Rational v = 0;
  for (const auto& s : memo[top.verts]) v += simplex_det(p.chart_vertices(), s);
  return v;
}

Rational normalized_volume(const Polytope& p, const IMat& chart_rows) {
  if (p.is_empty()) return 0;
  const int k = static_cast<int>(chart_rows.rows());
  if (p.dim() < k) return 0;
  if (p.dim() > k) throw std::invalid_argument("polytope exceeds the chart dimension");
  // Saturated charts of the same direction space give equal volumes, but the
  // polytope must actually live in (a translate of) the chart span.
  for (int j = 1; j < p.vertex_count(); ++j) {
    if (!coordinates_in(chart_rows, RVec(p.vertex(j) - p.vertex(0))))
      throw std::invalid_argument("polytope does not lie in the chart span");
  }
  return normalized_volume(p);
}

Integer cone_volume_of_rays(const IMat& rays) {
  if (rays.cols() == 0) return 1;  // v({0}) = 1
  const Eigen::Index d = rays.rows(), s = rays.cols();
  if (static_cast<int>(s) == rank(rays)) {
    // Simplicial: |det| in a saturated chart of the span.
    IMat chart = saturated_basis(IMat(rays.transpose()));
    RMat coords(chart.rows(), s);
    for (Eigen::Index j = 0; j < s; ++j) {
      auto c = coordinates_in(chart, to_rational(IVec(rays.col(j))));
      if (!c) throw std::logic_error("ray outside its own span");
      coords.col(j) = *c;
    }
    return to_integer(abs(det(coords)));
  }
  RMat pts(d, s + 1);
  pts.col(0) = RVec::Zero(d);
  for (Eigen::Index j = 0; j < s; ++j) pts.col(j + 1) = to_rational(IVec(rays.col(j)));
  return to_integer(normalized_volume(Polytope::from_vertices(pts)));
}

std::vector<BoxPoint> box_points(const IMat& rays) {
  const Eigen::Index d = rays.rows(), s = rays.cols();
  if (static_cast<int>(s) != rank(rays)) throw std::invalid_argument("box points need a simplicial cone");
  std::vector<BoxPoint> out;
  if (s == 0) {
    out.push_back({IVec::Zero(d), RVec(0)});
    return out;
  }
  // Bounding box of the closed parallelepiped.
  std::vector<Integer> lo(static_cast<size_t>(d), 0), hi(static_cast<size_t>(d), 0);
  for (Eigen::Index i = 0; i < d; ++i) {
    Integer mn = 0, mx = 0;
    for (Eigen::Index j = 0; j < s; ++j) {
      if (rays(i, j) < 0)
        mn += rays(i, j);
      else
        mx += rays(i, j);
    }
    lo[static_cast<size_t>(i)] = mn;
    hi[static_cast<size_t>(i)] = mx;
  }
  RMat u = to_rational(rays);
  IVec x(d);
  std::function<void(Eigen::Index)> rec = [&](Eigen::Index t) {
    if (t == d) {
      auto lambda = solve_rational(u, to_rational(x));
      if (!lambda) return;
      // Overdetermined systems report a candidate; verify exactly.
      RVec check = RVec::Zero(d);
      for (Eigen::Index j = 0; j < s; ++j) check += (*lambda)(j)*u.col(j);
      for (Eigen::Index i = 0; i < d; ++i)
        if (check(i) != Rational(x(i))) return;
      for (Eigen::Index j = 0; j < s; ++j)
        if (!((*lambda)(j) > 0 && (*lambda)(j) <= 1)) return;
      out.push_back({x, *lambda});
      return;
    }
    for (Integer v = lo[static_cast<size_t>(t)]; v <= hi[static_cast<size_t>(t)]; ++v) {
      x(t) = v;
      rec(t + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(),
            [](const BoxPoint& a, const BoxPoint& b) { return lex_compare(a.point, b.point) < 0; });
  return out;
}

Rational mixed_volume(const std::vector<Polytope>& polys, const IMat& chart_rows) {
  const size_t k = polys.size();
  if (k == 0) throw std::invalid_argument("mixed volume of no polytopes");
  if (static_cast<size_t>(chart_rows.rows()) != k) throw std::invalid_argument("dimension mismatch");
  for (const Polytope& p : polys) {
    if (p.is_empty()) throw std::invalid_argument("mixed volume of an empty polytope");
    for (int j = 1; j < p.vertex_count(); ++j)
      if (!coordinates_in(chart_rows, RVec(p.vertex(j) - p.vertex(0))))
        throw std::invalid_argument("dimension mismatch");
  }
  Integer kfact = 1;
  for (size_t i = 2; i <= k; ++i) kfact *= Integer(i);

  Rational total = 0;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    Polytope sum = Polytope::empty(polys[0].ambient_dim());
    bool first = true;
    for (size_t i = 0; i < k; ++i) {
      if (!(mask >> i & 1)) continue;
      sum = first ? polys[i] : minkowski_sum(sum, polys[i]);
      first = false;
    }
    Rational vol_k = (sum.dim() < static_cast<int>(k)) ? Rational(0)
                                                       : normalized_volume(sum) / Rational(kfact);
    int sign = (k - static_cast<size_t>(__builtin_popcount(mask))) % 2 == 0 ? 1 : -1;
    total += Rational(sign) * vol_k;
  }
  return total;
}

Rational mixed_volume(const std::vector<Polytope>& polys) {
  if (polys.empty()) throw std::invalid_argument("mixed volume of no polytopes");
  const int d = polys[0].ambient_dim();
  if (static_cast<size_t>(d) != polys.size()) throw std::invalid_argument("dimension mismatch");
  return mixed_volume(polys, IMat(IMat::Identity(d, d)));
}

}  // namespace stringy
