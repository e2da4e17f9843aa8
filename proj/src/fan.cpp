#include "stringy/fan.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace stringy {

namespace {

Rational dot(const RVec& a, const IVec& b) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * Rational(b(i));
  return s;
}

Integer idot(const IVec& a, const IVec& b) {
  Integer s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[static_cast<size_t>(x)] == x ? x : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]); }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

Fan Fan::from_cones(const IMat& rays, std::vector<std::vector<int>> max_cones) {
  Fan fan;
  fan.rays_ = rays;
  const int d = fan.dim();
  const int nr = fan.ray_count();

  for (int i = 0; i < nr; ++i) {
    IVec r = rays.col(i);
    if (content(r) != 1) throw std::invalid_argument("fan rays must be primitive");
    for (int j = i + 1; j < nr; ++j)
      if (lex_compare(IVec(rays.col(i)), IVec(rays.col(j))) == 0)
        throw std::invalid_argument("duplicate fan ray");
  }

  std::set<std::vector<int>> seen_max;
  std::map<std::vector<int>, std::set<int>> containing_max;  // face rayset -> max cone indices
  for (auto& mc : max_cones) {
    std::sort(mc.begin(), mc.end());
    mc.erase(std::unique(mc.begin(), mc.end()), mc.end());
    for (int i : mc)
      if (i < 0 || i >= nr) throw std::invalid_argument("cone ray index out of range");
    if (!seen_max.insert(mc).second) throw std::invalid_argument("duplicate maximal cone");
  }

  for (size_t ci = 0; ci < max_cones.size(); ++ci) {
    const auto& mc = max_cones[ci];
    IMat gens(d, static_cast<Eigen::Index>(mc.size()));
    for (size_t j = 0; j < mc.size(); ++j) gens.col(static_cast<Eigen::Index>(j)) = rays.col(mc[j]);
    if (rank(gens) != d) throw std::invalid_argument("fan not complete (maximal cone not full-dimensional)");

    ConeFacets cf = cone_facets(to_rational(gens));
    // Pointedness: a pointed full-dimensional cone has facet normals of full rank.
    if (rank(cf.normals) != d) throw std::invalid_argument("fan cone is not pointed");
    fan.facet_normals_[mc] = cf.normals;

    // Listed rays must be exactly the extreme rays.
    for (size_t j = 0; j < mc.size(); ++j) {
      std::vector<IVec> tight;
      for (Eigen::Index f = 0; f < cf.normals.rows(); ++f)
        if (idot(IVec(cf.normals.row(f).transpose()), IVec(gens.col(static_cast<Eigen::Index>(j)))) == 0)
          tight.push_back(cf.normals.row(f).transpose());
      IMat tm(static_cast<Eigen::Index>(tight.size()), d);
      for (size_t t = 0; t < tight.size(); ++t) tm.row(static_cast<Eigen::Index>(t)) = tight[t].transpose();
      if (tight.empty() || rank(tm) != d - 1)
        throw std::invalid_argument("listed ray is not an extreme ray of its cone");
    }

    // Face closure from facet incidences (local ray positions -> global).
    std::set<std::vector<int>> faces;
    std::vector<std::vector<int>> facet_sets;
    for (const auto& inc : cf.incident) {
      std::vector<int> s;
      for (int li : inc) s.push_back(mc[static_cast<size_t>(li)]);
      std::sort(s.begin(), s.end());
      facet_sets.push_back(s);
      faces.insert(s);
    }
    std::vector<std::vector<int>> work(faces.begin(), faces.end());
    while (!work.empty()) {
      std::vector<int> s = work.back();
      work.pop_back();
      for (const auto& f : facet_sets) {
        std::vector<int> inter;
        std::set_intersection(s.begin(), s.end(), f.begin(), f.end(), std::back_inserter(inter));
        if (inter == s) continue;
        if (faces.insert(inter).second) work.push_back(inter);
      }
    }
    faces.insert(mc);
    faces.insert({});  // the zero cone
    for (const auto& f : faces) containing_max[f].insert(static_cast<int>(ci));
    fan.faces_of_[mc] = std::vector<std::vector<int>>(faces.begin(), faces.end());
  }

  // Derived cones by dimension.
  fan.cones_.assign(static_cast<size_t>(d) + 1, {});
  std::map<std::vector<int>, int> cone_dim;
  for (const auto& [rayset, owners] : containing_max) {
    (void)owners;
    IMat gens(d, static_cast<Eigen::Index>(rayset.size()));
    for (size_t j = 0; j < rayset.size(); ++j) gens.col(static_cast<Eigen::Index>(j)) = rays.col(rayset[j]);
    int cd = rayset.empty() ? 0 : rank(gens);
    cone_dim[rayset] = cd;
    fan.cones_[static_cast<size_t>(cd)].push_back(Cone{rayset, cd});
  }
  for (auto& bucket : fan.cones_)
    std::sort(bucket.begin(), bucket.end(), [](const Cone& a, const Cone& b) { return a.rays < b.rays; });

  // Common-face sanity: shared rays of two maximal cones must be a face of both.
  for (size_t i = 0; i < max_cones.size(); ++i) {
    for (size_t j = i + 1; j < max_cones.size(); ++j) {
      std::vector<int> inter;
      std::set_intersection(max_cones[i].begin(), max_cones[i].end(), max_cones[j].begin(),
                            max_cones[j].end(), std::back_inserter(inter));
      const auto& fi = fan.faces_of_[max_cones[i]];
      const auto& fj = fan.faces_of_[max_cones[j]];
      bool in_i = std::binary_search(fi.begin(), fi.end(), inter) || inter.empty();
      bool in_j = std::binary_search(fj.begin(), fj.end(), inter) || inter.empty();
      if (!in_i || !in_j) throw std::invalid_argument("maximal cones do not meet in a common face");
    }
  }

  // Walls and the completeness certificate.
  UnionFind uf(max_cones.size());
  for (const Cone& c : fan.cones_[static_cast<size_t>(d) - 1]) {
    std::vector<int> owners;
    for (size_t ci = 0; ci < max_cones.size(); ++ci) {
      const auto& fl = fan.faces_of_[max_cones[ci]];
      if (std::binary_search(fl.begin(), fl.end(), c.rays)) owners.push_back(static_cast<int>(ci));
    }
    if (owners.size() != 2) throw std::invalid_argument("fan not complete");
    fan.walls_.push_back(Wall{c, owners[0], owners[1]});
    uf.unite(owners[0], owners[1]);
  }
  for (size_t ci = 1; ci < max_cones.size(); ++ci)
    if (uf.find(static_cast<int>(ci)) != uf.find(0)) throw std::invalid_argument("fan not complete");

  fan.max_cones_.clear();
  for (const auto& mc : max_cones) fan.max_cones_.push_back(Cone{mc, d});
  return fan;
}

bool Fan::simplicial() const {
  for (const Cone& c : max_cones_)
    if (static_cast<int>(c.rays.size()) != dim()) return false;
  return true;
}

IMat Fan::cone_ray_matrix(const Cone& c) const {
  IMat m(dim(), static_cast<Eigen::Index>(c.rays.size()));
  for (size_t j = 0; j < c.rays.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = rays_.col(c.rays[j]);
  return m;
}

Integer Fan::cone_volume(const Cone& c) const { return cone_volume_of_rays(cone_ray_matrix(c)); }

Integer Fan::volume() const {
  Integer v = 0;
  for (const Cone& c : max_cones_) v += cone_volume(c);
  return v;
}

std::vector<std::vector<int>> Fan::cone_faces(const std::vector<int>& rayset) const {
  std::vector<std::vector<int>> out;
  for (const auto& bucket : cones_) {
    for (const Cone& c : bucket)
      if (std::includes(rayset.begin(), rayset.end(), c.rays.begin(), c.rays.end())) out.push_back(c.rays);
  }
  return out;
}

bool Fan::cone_contains(const Cone& c, const IVec& n) const {
  // Solve n = Σ λ_i u_i with λ ≥ 0 via the cone's facet normals when maximal,
  // otherwise via exact nonnegative coordinates on a simplicial subset; for
  // membership tests we only need maximal cones.
  auto it = facet_normals_.find(c.rays);
  if (it == facet_normals_.end()) throw std::invalid_argument("membership test requires a maximal cone");
  const IMat& normals = it->second;
  for (Eigen::Index f = 0; f < normals.rows(); ++f)
    if (idot(IVec(normals.row(f).transpose()), n) < 0) return false;
  return true;
}

int Fan::maximal_cone_containing(const IVec& n) const {
  for (size_t i = 0; i < max_cones_.size(); ++i)
    if (cone_contains(max_cones_[i], n)) return static_cast<int>(i);
  return -1;
}

Fan face_fan(const Polytope& p) {
  if (!p.has_interior_origin()) throw std::domain_error("face fan needs the origin interior");
  const int d = p.ambient_dim();
  IMat rays(d, p.vertex_count());
  for (int j = 0; j < p.vertex_count(); ++j) rays.col(j) = primitive(to_integer(RVec(p.vertex(j))));
  std::vector<std::vector<int>> cones;
  for (const Face& f : p.face_lattice()[static_cast<size_t>(d) - 1]) cones.push_back(f.verts);
  return Fan::from_cones(rays, cones);
}

Fan normal_fan(const Polytope& p) {
  if (p.dim() != p.ambient_dim()) throw std::domain_error("normal fan needs a full-dimensional polytope");
  const auto& facets = p.facet_description();
  const int d = p.ambient_dim();
  IMat rays(d, static_cast<Eigen::Index>(facets.size()));
  for (size_t i = 0; i < facets.size(); ++i) rays.col(static_cast<Eigen::Index>(i)) = facets[i].normal;
  std::vector<std::vector<int>> cones;
  for (const Face& v : p.face_lattice()[0]) {
    std::vector<int> c;
    for (size_t i = 0; i < facets.size(); ++i) {
      Rational val = 0;
      for (Eigen::Index t = 0; t < d; ++t) val += p.vertex(v.verts[0])(t) * Rational(facets[i].normal(t));
      if (val == facets[i].offset) c.push_back(static_cast<int>(i));
    }
    cones.push_back(c);
  }
  return Fan::from_cones(rays, cones);
}

PLFunction cartier_data(const Fan& fan, const TorusDivisor& d) {
  if (d.a.size() != fan.ray_count()) throw std::invalid_argument("divisor/ray count mismatch");
  PLFunction pl;
  for (const Cone& c : fan.maximal_cones()) {
    RMat a(static_cast<Eigen::Index>(c.rays.size()), fan.dim());
    RVec rhs(static_cast<Eigen::Index>(c.rays.size()));
    for (size_t j = 0; j < c.rays.size(); ++j) {
      a.row(static_cast<Eigen::Index>(j)) = to_rational(IVec(fan.ray(c.rays[j]))).transpose();
      rhs(static_cast<Eigen::Index>(j)) = -d.a(c.rays[j]);
    }
    auto m = solve_rational(a, rhs);
    if (!m) throw std::domain_error("not Q-Cartier");
    pl.m.push_back(*m);
  }
  return pl;
}

PLFunction canonical_kappa(const Fan& fan) {
  TorusDivisor minus_k = anticanonical(fan);
  try {
    return cartier_data(fan, minus_k);
  } catch (const std::domain_error&) {
    throw std::domain_error("not Q-Gorenstein");
  }
}

Rational evaluate(const Fan& fan, const PLFunction& pl, const IVec& n) {
  int ci = fan.maximal_cone_containing(n);
  if (ci < 0) throw std::logic_error("point escapes the complete fan");
  return dot(pl.m[static_cast<size_t>(ci)], n);
}

Integer gorenstein_index(const Fan& fan) {
  PLFunction kappa = canonical_kappa(fan);
  Integer q = 1;
  for (const RVec& m : kappa.m) q = lcm(q, lcm_denominators(m));
  return q;
}

TorusDivisor anticanonical(const Fan& fan) {
  TorusDivisor d;
  d.a = RVec(fan.ray_count());
  for (int i = 0; i < fan.ray_count(); ++i) d.a(i) = 1;
  return d;
}

namespace {

std::vector<std::vector<int>> pull_cone(const Fan& fan, const std::vector<int>& rayset, int conedim,
                                        const std::vector<int>& priority,
                                        std::map<std::vector<int>, std::vector<std::vector<int>>>& memo) {
  auto it = memo.find(rayset);
  if (it != memo.end()) return it->second;
  std::vector<std::vector<int>> simplices;
  if (static_cast<int>(rayset.size()) == conedim) {
    simplices.push_back(rayset);
  } else {
    int apex = rayset[0];
    for (int r : rayset)
      if (priority[static_cast<size_t>(r)] < priority[static_cast<size_t>(apex)]) apex = r;
    // Facets of this cone: the (dim−1)-faces from the fan's cone poset.
    for (const auto& face : fan.cone_faces(rayset)) {
      if (face.size() >= rayset.size()) continue;
      if (std::binary_search(face.begin(), face.end(), apex)) continue;
      IMat gens(fan.dim(), static_cast<Eigen::Index>(face.size()));
      for (size_t j = 0; j < face.size(); ++j) gens.col(static_cast<Eigen::Index>(j)) = fan.ray(face[j]);
      if (rank(gens) != conedim - 1) continue;
      for (const auto& s : pull_cone(fan, face, conedim - 1, priority, memo)) {
        std::vector<int> t = s;
        t.push_back(apex);
        std::sort(t.begin(), t.end());
        simplices.push_back(std::move(t));
      }
    }
  }
  memo[rayset] = simplices;
  return simplices;
}

}  // namespace

Fan pulling_subdivision(const Fan& fan, const std::vector<int>& priority) {
  std::vector<int> prio = priority;
  if (prio.empty()) {
    prio.resize(static_cast<size_t>(fan.ray_count()));
    std::iota(prio.begin(), prio.end(), 0);
  }
  if (prio.size() != static_cast<size_t>(fan.ray_count()))
    throw std::invalid_argument("priority size mismatch");

  // Sub-cones of a maximal cone are not fan cones; give the recursion its own
  // face poset by working inside each maximal cone.
  std::map<std::vector<int>, std::vector<std::vector<int>>> memo;
  std::vector<std::vector<int>> new_max;
  std::set<std::vector<int>> dedup;
  for (const Cone& c : fan.maximal_cones()) {
    for (const auto& s : pull_cone(fan, c.rays, c.dim, prio, memo))
      if (dedup.insert(s).second) new_max.push_back(s);
  }
  return Fan::from_cones(fan.rays(), new_max);
}

Polytope divisor_polytope(const Fan& fan, const TorusDivisor& d) {
  if (d.a.size() != fan.ray_count()) throw std::invalid_argument("divisor/ray count mismatch");
  const int dim = fan.dim();
  const int nr = fan.ray_count();
  // Vertex candidates: solutions of d tight inequalities, kept when feasible.
  std::vector<RVec> pts;
  std::vector<int> idx(static_cast<size_t>(dim));
  std::function<void(int, int)> choose = [&](int start, int depth) {
    if (depth == dim) {
      RMat a(dim, dim);
      RVec rhs(dim);
      for (int j = 0; j < dim; ++j) {
        a.row(j) = to_rational(IVec(fan.ray(idx[static_cast<size_t>(j)]))).transpose();
        rhs(j) = -d.a(idx[static_cast<size_t>(j)]);
      }
      if (rank(a) != dim) return;
      auto y = solve_rational(a, rhs);
      if (!y) return;
      for (int r = 0; r < nr; ++r) {
        Rational val = 0;
        for (int t = 0; t < dim; ++t) val += (*y)(t)*Rational(fan.ray(r)(t));
        if (val < -d.a(r)) return;
      }
      pts.push_back(*y);
      return;
    }
    for (int i = start; i < nr; ++i) {
      idx[static_cast<size_t>(depth)] = i;
      choose(i + 1, depth + 1);
    }
  };
  choose(0, 0);
  if (pts.empty()) return Polytope::empty(dim);
  RMat m(dim, static_cast<Eigen::Index>(pts.size()));
  for (size_t j = 0; j < pts.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = pts[j];
  return Polytope::from_vertices(m);
}

Polytope divisor_face(const Fan& fan, const TorusDivisor& d, const Polytope& delta_d, const Cone& sigma) {
  if (delta_d.is_empty()) return delta_d;
  std::vector<RVec> keep;
  for (int j = 0; j < delta_d.vertex_count(); ++j) {
    bool tight = true;
    for (int r : sigma.rays) {
      Rational val = 0;
      for (int t = 0; t < fan.dim(); ++t) val += delta_d.vertex(j)(t) * Rational(fan.ray(r)(t));
      if (val != -d.a(r)) {
        tight = false;
        break;
      }
    }
    if (tight) keep.push_back(delta_d.vertex(j));
  }
  if (keep.empty()) return Polytope::empty(fan.dim());
  RMat m(fan.dim(), static_cast<Eigen::Index>(keep.size()));
  for (size_t j = 0; j < keep.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = keep[j];
  return Polytope::from_vertices(m);
}

Polytope divisor_face(const Fan& fan, const TorusDivisor& d, const Cone& sigma) {
  return divisor_face(fan, d, divisor_polytope(fan, d), sigma);
}

TorusDivisor divisor_of_polytope(const Fan& fan, const Polytope& p) {
  TorusDivisor d;
  d.a = RVec(fan.ray_count());
  for (int i = 0; i < fan.ray_count(); ++i) {
    Rational mn;
    bool first = true;
    for (int j = 0; j < p.vertex_count(); ++j) {
      Rational val = 0;
      for (int t = 0; t < fan.dim(); ++t) val += p.vertex(j)(t) * Rational(fan.ray(i)(t));
      if (first || val < mn) {
        mn = val;
        first = false;
      }
    }
    d.a(i) = -mn;
  }
  return d;
}

namespace {

bool convexity_check(const Fan& fan, const TorusDivisor& d, bool strict) {
  PLFunction pl = cartier_data(fan, d);
  for (size_t ci = 0; ci < fan.maximal_cones().size(); ++ci) {
    const Cone& c = fan.maximal_cones()[ci];
    for (int r = 0; r < fan.ray_count(); ++r) {
      if (std::binary_search(c.rays.begin(), c.rays.end(), r)) continue;
      Rational val = dot(pl.m[ci], fan.ray(r));
      if (strict ? !(val > -d.a(r)) : val < -d.a(r)) return false;
    }
  }
  return true;
}

}  // namespace

bool is_semiample(const Fan& fan, const TorusDivisor& d) { return convexity_check(fan, d, false); }
bool is_ample(const Fan& fan, const TorusDivisor& d) { return convexity_check(fan, d, true); }

IMat orthogonal_chart(const Fan& fan, const Cone& sigma) {
  IMat rows(static_cast<Eigen::Index>(sigma.rays.size()), fan.dim());
  for (size_t j = 0; j < sigma.rays.size(); ++j) rows.row(static_cast<Eigen::Index>(j)) = fan.ray(sigma.rays[j]).transpose();
  return integer_kernel(rows);
}

Rational wall_coefficient(const Fan& fan, const TorusDivisor& d, const Cone& wall) {
  const Wall* w = nullptr;
  for (const Wall& cand : fan.walls())
    if (cand.cone.rays == wall.rays) {
      w = &cand;
      break;
    }
  if (!w) throw std::invalid_argument("not a wall");

  PLFunction pl = cartier_data(fan, d);
  const RVec& m1 = pl.m[static_cast<size_t>(w->max1)];
  const RVec& m2 = pl.m[static_cast<size_t>(w->max2)];

  IMat chart = orthogonal_chart(fan, wall);
  if (chart.rows() != 1) throw std::logic_error("wall chart is not one-dimensional");
  IVec u = chart.row(0).transpose();

  // Orient u nonpositive on the first neighbor.
  const Cone& c1 = fan.maximal_cones()[static_cast<size_t>(w->max1)];
  for (int r : c1.rays) {
    Integer v = idot(u, IVec(fan.ray(r)));
    if (v > 0) {
      u = -u;
      break;
    }
    if (v < 0) break;
  }

  RVec diff = m1 - m2;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u(i) != 0) {
      Rational l = diff(i) / Rational(u(i));
      // m_{σ'} − m_{σ''} must be a rational multiple of u.
      for (Eigen::Index t = 0; t < u.size(); ++t)
        if (diff(t) != l * Rational(u(t))) throw std::logic_error("wall difference not proportional to u");
      return l;
    }
  }
  if (!diff.isZero()) throw std::logic_error("wall difference not proportional to u");
  return 0;
}

}  // namespace stringy
