#include "stringy/polytope.hpp"

#include "stringy/ehrhart.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <stdexcept>

namespace stringy {

namespace {

// Scale a rational direction to its primitive integer representative,
// preserving orientation.
IVec primitive_direction(const RVec& v) {
  Integer scale = lcm_denominators(v);
  IVec w(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Rational s = v(i) * Rational(scale);
    w(i) = s.get_num();
  }
  Integer g = content(w);
  if (g == 0) throw std::invalid_argument("zero vector has no primitive form");
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) /= g;
  return w;
}

Rational dot(const RVec& a, const IVec& b) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * Rational(b(i));
  return s;
}

int rank_of_rows(const std::vector<IVec>& rows, Eigen::Index dim) {
  if (rows.empty()) return 0;
  IMat m(static_cast<Eigen::Index>(rows.size()), dim);
  for (size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return rank(m);
}

}  // namespace

namespace {

// Extreme ray of the running dual cone with its tight set over the processed
// constraints, kept as a bitmask for the combinatorial adjacency test.
struct DDRay {
  IVec v;
  std::vector<uint64_t> tight;
};

void set_bit(std::vector<uint64_t>& w, size_t i) { w[i >> 6] |= uint64_t(1) << (i & 63); }

}  // namespace

ConeFacets cone_facets(const RMat& gens) {
  const Eigen::Index D = gens.rows();
  const Eigen::Index n = gens.cols();
  const size_t words = (static_cast<size_t>(n) + 63) / 64;

  std::vector<IVec> lineality;
  for (Eigen::Index i = 0; i < D; ++i) {
    IVec e = IVec::Zero(D);
    e(i) = 1;
    lineality.push_back(e);
  }
  std::vector<DDRay> rays;

  auto exact_tight = [&](const IVec& v, Eigen::Index upto) {
    std::vector<uint64_t> t(words, 0);
    for (Eigen::Index g = 0; g <= upto; ++g)
      if (dot(gens.col(g), v) == 0) set_bit(t, static_cast<size_t>(g));
    return t;
  };

  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Index hit = -1;
    Rational hv;
    for (size_t i = 0; i < lineality.size(); ++i) {
      Rational v = dot(gens.col(j), lineality[i]);
      if (v != 0) {
        hit = static_cast<Eigen::Index>(i);
        hv = v;
        break;
      }
    }
    if (hit >= 0) {
      // The constraint cuts the lineality space: project everything onto the
      // hyperplane along l0 and keep ±l0 as the new extreme ray.
      IVec l0 = lineality[static_cast<size_t>(hit)];
      std::vector<IVec> new_lin;
      for (size_t i = 0; i < lineality.size(); ++i) {
        if (static_cast<Eigen::Index>(i) == hit) continue;
        Rational v = dot(gens.col(j), lineality[i]);
        RVec proj = to_rational(lineality[i]) - (v / hv) * to_rational(l0);
        new_lin.push_back(primitive_direction(proj));
      }
      for (DDRay& r : rays) {
        Rational v = dot(gens.col(j), r.v);
        if (v != 0) {
          RVec proj = to_rational(r.v) - (v / hv) * to_rational(l0);
          r.v = primitive_direction(proj);
          r.tight = exact_tight(r.v, j);
        } else {
          set_bit(r.tight, static_cast<size_t>(j));
        }
      }
      DDRay r0{hv > 0 ? l0 : IVec(-l0), exact_tight(hv > 0 ? l0 : IVec(-l0), j)};
      rays.push_back(std::move(r0));
      lineality = std::move(new_lin);
      continue;
    }

    std::vector<Rational> vals(rays.size());
    bool any_minus = false;
    for (size_t i = 0; i < rays.size(); ++i) {
      vals[i] = dot(gens.col(j), rays[i].v);
      if (vals[i] < 0) any_minus = true;
      if (vals[i] == 0) set_bit(rays[i].tight, static_cast<size_t>(j));
    }
    if (!any_minus) continue;

    // Adjacency of a (+,−) pair: no third ray is tight on their common set.
    // While lineality remains, fall back to the exact rank condition.
    auto adjacent = [&](size_t p, size_t m) {
      std::vector<uint64_t> common(words);
      for (size_t w = 0; w < words; ++w) common[w] = rays[p].tight[w] & rays[m].tight[w];
      if (lineality.empty()) {
        for (size_t o = 0; o < rays.size(); ++o) {
          if (o == p || o == m) continue;
          bool superset = true;
          for (size_t w = 0; w < words; ++w)
            if ((rays[o].tight[w] & common[w]) != common[w]) {
              superset = false;
              break;
            }
          if (superset) return false;
        }
        return true;
      }
      std::vector<IVec> tight_gens;
      for (Eigen::Index t = 0; t < j; ++t)
        if (common[static_cast<size_t>(t) >> 6] >> (static_cast<size_t>(t) & 63) & 1)
          tight_gens.push_back(primitive_direction(gens.col(t)));
      return rank_of_rows(tight_gens, D) == static_cast<int>(D - lineality.size()) - 2;
    };

    std::vector<DDRay> next;
    std::vector<size_t> plus, minus;
    for (size_t i = 0; i < rays.size(); ++i) {
      if (vals[i] >= 0) next.push_back(rays[i]);
      if (vals[i] > 0) plus.push_back(i);
      if (vals[i] < 0) minus.push_back(i);
    }
    for (size_t p : plus) {
      for (size_t m : minus) {
        if (!adjacent(p, m)) continue;
        RVec combo = vals[p] * to_rational(rays[m].v) - vals[m] * to_rational(rays[p].v);
        IVec w = primitive_direction(combo);
        next.push_back(DDRay{w, exact_tight(w, j)});
      }
    }
    rays = std::move(next);
  }

  if (!lineality.empty()) throw std::logic_error("cone generators do not span the space");

  std::sort(rays.begin(), rays.end(), [](const DDRay& a, const DDRay& b) { return lex_compare(a.v, b.v) < 0; });
  rays.erase(std::unique(rays.begin(), rays.end(),
                         [](const DDRay& a, const DDRay& b) { return lex_compare(a.v, b.v) == 0; }),
             rays.end());

  ConeFacets out;
  out.normals.resize(static_cast<Eigen::Index>(rays.size()), D);
  out.incident.resize(rays.size());
  for (size_t i = 0; i < rays.size(); ++i) {
    out.normals.row(static_cast<Eigen::Index>(i)) = rays[i].v.transpose();
    for (Eigen::Index g = 0; g < n; ++g)
      if (dot(gens.col(g), rays[i].v) == 0) out.incident[i].push_back(static_cast<int>(g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polytope
// ---------------------------------------------------------------------------

Polytope Polytope::empty(int ambient_dim) {
  Polytope p;
  p.verts_.resize(ambient_dim, 0);
  p.dim_ = -1;
  p.chart_.resize(0, ambient_dim);
  p.base_ = RVec::Zero(ambient_dim);
  p.chart_verts_.resize(0, 0);
  return p;
}

Polytope Polytope::from_vertices(const IMat& points) { return from_vertices(to_rational(points)); }

Polytope Polytope::from_vertices(const RMat& points) {
  if (points.cols() == 0) throw std::invalid_argument("polytope needs a nonempty point set");
  Polytope p;
  // Deduplicate and sort the input points.
  std::vector<RVec> pts;
  for (Eigen::Index j = 0; j < points.cols(); ++j) pts.push_back(points.col(j));
  std::sort(pts.begin(), pts.end(), [](const RVec& a, const RVec& b) { return lex_compare(a, b) < 0; });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const RVec& a, const RVec& b) { return lex_compare(a, b) == 0; }),
            pts.end());
  p.verts_.resize(points.rows(), static_cast<Eigen::Index>(pts.size()));
  for (size_t j = 0; j < pts.size(); ++j) p.verts_.col(static_cast<Eigen::Index>(j)) = pts[j];
  p.build();
  return p;
}

void Polytope::build() {
  const Eigen::Index d = verts_.rows();
  const Eigen::Index n = verts_.cols();
  base_ = verts_.col(0);  // lexicographic minimum, always a vertex

  // Integer direction rows spanning the affine hull.
  IMat dirs(n - 1, d);
  for (Eigen::Index j = 1; j < n; ++j) {
    RVec diff = verts_.col(j) - base_;
    dirs.row(j - 1) = primitive_direction(diff).transpose();
  }
  if (n == 1) dirs.resize(0, d);
  chart_ = saturated_basis(dirs);
  dim_ = static_cast<int>(chart_.rows());

  RMat bt = to_rational(IMat(chart_.transpose()));
  chart_verts_.resize(dim_, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    auto c = solve_rational(bt, RVec(verts_.col(j) - base_));
    if (!c) throw std::logic_error("vertex outside its own affine hull");
    chart_verts_.col(j) = *c;
  }

  if (dim_ == 0) {
    faces_.assign(1, {Face{{0}, 0}});
    return;
  }

  RMat homog(dim_ + 1, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    homog(0, j) = 1;
    homog.col(j).tail(dim_) = chart_verts_.col(j);
  }
  ConeFacets cf = cone_facets(homog);

  facets_.clear();
  for (Eigen::Index i = 0; i < cf.normals.rows(); ++i) {
    IVec a = cf.normals.row(i).tail(dim_).transpose();
    Integer g = content(a);
    if (g == 0) throw std::logic_error("degenerate facet");
    FacetIneq f;
    f.normal = IVec(a.size());
    for (Eigen::Index t = 0; t < a.size(); ++t) f.normal(t) = a(t) / g;
    f.offset = Rational(-cf.normals(i, 0), g);
    f.offset.canonicalize();
    facets_.push_back(std::move(f));
  }

  // Keep only extreme points: a point whose tight normals span the chart.
  std::vector<std::vector<int>> tight(n);
  for (size_t fi = 0; fi < cf.incident.size(); ++fi)
    for (int g : cf.incident[fi]) tight[static_cast<size_t>(g)].push_back(static_cast<int>(fi));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < n; ++j) {
    std::vector<IVec> normals;
    for (int fi : tight[static_cast<size_t>(j)]) normals.push_back(facets_[static_cast<size_t>(fi)].normal);
    if (rank_of_rows(normals, dim_) == dim_) keep.push_back(j);
  }
  if (static_cast<Eigen::Index>(keep.size()) != n) {
    RMat vv(d, static_cast<Eigen::Index>(keep.size()));
    RMat cc(dim_, static_cast<Eigen::Index>(keep.size()));
    for (size_t j = 0; j < keep.size(); ++j) {
      vv.col(static_cast<Eigen::Index>(j)) = verts_.col(keep[j]);
      cc.col(static_cast<Eigen::Index>(j)) = chart_verts_.col(keep[j]);
    }
    verts_ = std::move(vv);
    chart_verts_ = std::move(cc);
  }

  // Canonical facet order, then vertex-facet incidence on the kept vertices.
  std::sort(facets_.begin(), facets_.end(), [](const FacetIneq& x, const FacetIneq& y) {
    int c = lex_compare(x.normal, y.normal);
    return c != 0 ? c < 0 : x.offset < y.offset;
  });
  // Chart facets constrain c(x) = x − base when full-dimensional; shift them
  // back to inequalities on ambient points.
  if (dim_ == d) {
    ambient_facets_ = facets_;
    for (auto& f : ambient_facets_) {
      Rational shift = 0;
      for (Eigen::Index t = 0; t < d; ++t) shift += base_(t) * Rational(f.normal(t));
      f.offset += shift;
    }
  }
  const Eigen::Index nv = verts_.cols();
  facet_verts_.assign(facets_.size(), {});
  for (size_t fi = 0; fi < facets_.size(); ++fi) {
    for (Eigen::Index j = 0; j < nv; ++j) {
      if (dot(chart_verts_.col(j), facets_[fi].normal) == facets_[fi].offset)
        facet_verts_[fi].push_back(static_cast<int>(j));
    }
  }

  // Face lattice: close the facet vertex sets under intersection.
  std::set<std::vector<int>> all(facet_verts_.begin(), facet_verts_.end());
  std::queue<std::vector<int>> work;
  for (const auto& s : all) work.push(s);
  while (!work.empty()) {
    std::vector<int> s = work.front();
    work.pop();
    for (const auto& f : facet_verts_) {
      std::vector<int> inter;
      std::set_intersection(s.begin(), s.end(), f.begin(), f.end(), std::back_inserter(inter));
      if (inter.empty() || inter == s) continue;
      if (all.insert(inter).second) work.push(inter);
    }
  }

  faces_.assign(static_cast<size_t>(dim_) + 1, {});
  for (const auto& s : all) {
    std::vector<IVec> dirs2;
    RVec c0 = chart_verts_.col(s[0]);
    for (size_t j = 1; j < s.size(); ++j) dirs2.push_back(primitive_direction(RVec(chart_verts_.col(s[j]) - c0)));
    int fd = rank_of_rows(dirs2, dim_);
    faces_[static_cast<size_t>(fd)].push_back(Face{s, fd});
  }
  std::vector<int> full(static_cast<size_t>(nv));
  for (Eigen::Index j = 0; j < nv; ++j) full[static_cast<size_t>(j)] = static_cast<int>(j);
  faces_[static_cast<size_t>(dim_)].push_back(Face{full, dim_});
  for (auto& bucket : faces_)
    std::sort(bucket.begin(), bucket.end(), [](const Face& a, const Face& b) { return a.verts < b.verts; });
}

bool Polytope::is_lattice() const { return is_integral(verts_); }

IMat Polytope::lattice_vertices() const {
  if (!is_lattice()) throw std::domain_error("polytope has non-integral vertices");
  return to_integer(verts_);
}

const std::vector<FacetIneq>& Polytope::facet_description() const {
  if (dim_ != ambient_dim())
    throw std::domain_error("facet description requires a full-dimensional polytope");
  return ambient_facets_;
}

const std::vector<std::vector<Face>>& Polytope::face_lattice() const {
  if (is_empty()) throw std::domain_error("empty polytope has no faces");
  return faces_;
}

const Face& Polytope::full_face() const { return faces_.at(static_cast<size_t>(dim_)).front(); }

Polytope Polytope::face_polytope(const Face& f) const {
  RMat pts(verts_.rows(), static_cast<Eigen::Index>(f.verts.size()));
  for (size_t j = 0; j < f.verts.size(); ++j) pts.col(static_cast<Eigen::Index>(j)) = verts_.col(f.verts[j]);
  return from_vertices(pts);
}

int Polytope::face_index(const Face& f) const {
  const auto& bucket = faces_.at(static_cast<size_t>(f.dim));
  auto it = std::lower_bound(bucket.begin(), bucket.end(), f,
                             [](const Face& a, const Face& b) { return a.verts < b.verts; });
  if (it == bucket.end() || it->verts != f.verts) return -1;
  return static_cast<int>(it - bucket.begin());
}

namespace {

// Odometer scan of the integer points of a full-dimensional polytope given by
// chart facets; values are maintained incrementally per level.
void scan_box(const std::vector<FacetIneq>& facets, const std::vector<Integer>& lo,
              const std::vector<Integer>& hi, const std::function<void(const IVec&, bool)>& emit) {
  const size_t d = lo.size();
  IVec x(static_cast<Eigen::Index>(d));
  // partial[t][f] = contribution of coordinates < t to facet f.
  std::vector<std::vector<Rational>> partial(d + 1, std::vector<Rational>(facets.size(), Rational(0)));
  std::function<void(size_t)> rec = [&](size_t t) {
    if (t == d) {
      bool boundary = false;
      for (size_t f = 0; f < facets.size(); ++f) {
        int c = cmp(partial[d][f], facets[f].offset);
        if (c < 0) return;
        if (c == 0) boundary = true;
      }
      emit(x, boundary);
      return;
    }
    for (Integer v = lo[t]; v <= hi[t]; ++v) {
      x(static_cast<Eigen::Index>(t)) = v;
      for (size_t f = 0; f < facets.size(); ++f)
        partial[t + 1][f] = partial[t][f] + Rational(facets[f].normal(static_cast<Eigen::Index>(t)) * v);
      rec(t + 1);
    }
  };
  rec(0);
}

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

std::vector<LatticePointInfo> Polytope::lattice_points() const {
  std::vector<LatticePointInfo> out;
  if (is_empty()) return out;
  const Eigen::Index d = verts_.rows();

  if (dim_ == 0) {
    // A point is its own relative interior.
    if (is_integral(RVec(verts_.col(0)))) out.push_back({to_integer(RVec(verts_.col(0))), false});
    return out;
  }

  if (dim_ == d) {
    std::vector<Integer> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
      Rational mn = verts_(i, 0), mx = verts_(i, 0);
      for (Eigen::Index j = 1; j < verts_.cols(); ++j) {
        if (verts_(i, j) < mn) mn = verts_(i, j);
        if (verts_(i, j) > mx) mx = verts_(i, j);
      }
      lo[static_cast<size_t>(i)] = ceil_of(mn);
      hi[static_cast<size_t>(i)] = floor_of(mx);
    }
    scan_box(ambient_facets_, lo, hi, [&](const IVec& x, bool b) { out.push_back({x, b}); });
    return out;
  }

  // Lower-dimensional: find one integral point of the affine hull, then scan
  // in chart coordinates.
  IMat eqs = integer_kernel(chart_);
  RVec rhs(eqs.rows());
  for (Eigen::Index i = 0; i < eqs.rows(); ++i) rhs(i) = dot(base_, IVec(eqs.row(i).transpose()));
  // Solve eqs · x = rhs over the integers via the column HNF.
  IMat u;
  IMat h = hnf_cols(eqs, &u);
  RVec z = RVec::Zero(eqs.cols());
  RVec residual = rhs;
  Eigen::Index col = 0;
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    if (col < h.cols() && h(r, col) != 0) {
      Rational q = residual(r) / Rational(h(r, col));
      if (!is_integral(q)) return out;  // affine hull misses the lattice
      z(col) = q;
      for (Eigen::Index rr = 0; rr < h.rows(); ++rr) residual(rr) -= q * Rational(h(rr, col));
      ++col;
    } else if (residual(r) != 0) {
      return out;
    }
  }
  for (Eigen::Index r = 0; r < h.rows(); ++r)
    if (residual(r) != 0) return out;
  RVec x0 = RVec::Zero(d);
  for (Eigen::Index j = 0; j < u.cols(); ++j) x0 += z(j) * to_rational(IVec(u.col(j)));

  auto delta_opt = coordinates_in(chart_, RVec(x0 - base_));
  if (!delta_opt) throw std::logic_error("integral point outside chart span");
  RVec delta = *delta_opt;

  std::vector<Integer> lo(static_cast<size_t>(dim_)), hi(static_cast<size_t>(dim_));
  for (Eigen::Index i = 0; i < dim_; ++i) {
    Rational mn = chart_verts_(i, 0), mx = chart_verts_(i, 0);
    for (Eigen::Index j = 1; j < chart_verts_.cols(); ++j) {
      if (chart_verts_(i, j) < mn) mn = chart_verts_(i, j);
      if (chart_verts_(i, j) > mx) mx = chart_verts_(i, j);
    }
    lo[static_cast<size_t>(i)] = ceil_of(mn - delta(i));
    hi[static_cast<size_t>(i)] = floor_of(mx - delta(i));
  }
  // Shift facets by delta: facet(c + delta) >= offset.
  std::vector<FacetIneq> shifted = facets_;
  for (auto& f : shifted) f.offset -= dot(delta, f.normal);
  IMat chart_t = chart_.transpose();
  scan_box(shifted, lo, hi, [&](const IVec& w, bool b) {
    RVec amb = x0;
    for (Eigen::Index j = 0; j < dim_; ++j) amb += Rational(w(j)) * to_rational(IVec(chart_t.col(j)));
    out.push_back({to_integer(amb), b});
  });
  return out;
}

Integer Polytope::lattice_point_count() const {
  Integer c = 0;
  for (const auto& lp : lattice_points()) {
    (void)lp;
    ++c;
  }
  return c;
}

Integer Polytope::interior_lattice_point_count() const {
  Integer c = 0;
  for (const auto& lp : lattice_points())
    if (!lp.boundary) ++c;
  return c;
}

std::vector<IVec> Polytope::interior_lattice_points() const {
  std::vector<IVec> out;
  for (const auto& lp : lattice_points())
    if (!lp.boundary) out.push_back(lp.p);
  return out;
}

bool Polytope::contains(const RVec& x) const {
  if (is_empty()) return false;
  auto c = coordinates_in(chart_, RVec(x - base_));
  if (!c) return false;
  if (dim_ == 0) return lex_compare(x, RVec(verts_.col(0))) == 0;
  for (const auto& f : facets_)
    if (dot(*c, f.normal) < f.offset) return false;
  return true;
}

bool Polytope::has_interior_origin() const {
  if (dim_ != ambient_dim()) return false;
  for (const auto& f : ambient_facets_)
    if (!(f.offset < 0)) return false;
  return true;
}

Polytope Polytope::polar_dual() const {
  if (!has_interior_origin()) throw std::domain_error("dual undefined");
  RMat duals(ambient_dim(), static_cast<Eigen::Index>(ambient_facets_.size()));
  for (size_t i = 0; i < ambient_facets_.size(); ++i) {
    Rational s = -ambient_facets_[i].offset;  // > 0
    for (Eigen::Index r = 0; r < duals.rows(); ++r)
      duals(r, static_cast<Eigen::Index>(i)) = Rational(ambient_facets_[i].normal(r)) / s;
  }
  return from_vertices(duals);
}

bool Polytope::is_reflexive() const {
  if (!has_interior_origin()) return false;
  for (const auto& f : ambient_facets_)
    if (f.offset != -1) return false;
  return true;
}

int Polytope::dual_vertex_of_facet(const Polytope& dual, int facet) const {
  const FacetIneq& f = ambient_facets_.at(static_cast<size_t>(facet));
  Rational s = -f.offset;
  RVec y(ambient_dim());
  for (Eigen::Index r = 0; r < y.size(); ++r) y(r) = Rational(f.normal(r)) / s;
  for (Eigen::Index j = 0; j < dual.verts_.cols(); ++j)
    if (lex_compare(RVec(dual.verts_.col(j)), y) == 0) return static_cast<int>(j);
  throw std::logic_error("facet has no matching dual vertex");
}

Face Polytope::dual_face(const Face& theta, const Polytope& dual) const {
  if (theta.dim == dim_) throw std::domain_error("no dual face for the full polytope");
  std::vector<int> dverts;
  for (size_t fi = 0; fi < facets_.size(); ++fi) {
    if (std::includes(facet_verts_[fi].begin(), facet_verts_[fi].end(), theta.verts.begin(), theta.verts.end()))
      dverts.push_back(dual_vertex_of_facet(dual, static_cast<int>(fi)));
  }
  std::sort(dverts.begin(), dverts.end());
  Face f{dverts, dim_ - 1 - theta.dim};
  if (dual.face_index(f) < 0) throw std::logic_error("dual face not found in the dual face lattice");
  return f;
}

Polytope Polytope::dilate(const Integer& k) const {
  if (k < 0) throw std::invalid_argument("negative dilation");
  if (k == 0) return from_vertices(RMat(RMat::Zero(ambient_dim(), 1)));
  RMat v = verts_;
  for (Eigen::Index j = 0; j < v.cols(); ++j) v.col(j) *= Rational(k);
  return from_vertices(v);
}

Polytope Polytope::translate(const RVec& t) const {
  RMat v = verts_;
  for (Eigen::Index j = 0; j < v.cols(); ++j) v.col(j) += t;
  return from_vertices(v);
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
  RMat sums(p.ambient_dim(), static_cast<Eigen::Index>(p.vertex_count()) * q.vertex_count());
  Eigen::Index k = 0;
  for (int i = 0; i < p.vertex_count(); ++i)
    for (int j = 0; j < q.vertex_count(); ++j) sums.col(k++) = p.vertex(i) + q.vertex(j);
  return Polytope::from_vertices(sums);
}

// ---------------------------------------------------------------------------
// Gorenstein structure
// ---------------------------------------------------------------------------

namespace {

bool palindromic(const std::vector<Integer>& psi, int deg) {
  for (int j = 0; j <= deg; ++j)
    if (psi[static_cast<size_t>(j)] != psi[static_cast<size_t>(deg - j)]) return false;
  return true;
}

}  // namespace

std::optional<GorensteinData> Polytope::gorenstein_data() const {
  if (dim_ != ambient_dim()) throw std::domain_error("Gorenstein data requires a full-dimensional polytope");
  if (!is_lattice()) throw std::domain_error("Gorenstein data requires a lattice polytope");

  std::optional<GorensteinData> found;
  for (int r = 1; r <= dim_ + 1; ++r) {
    Polytope pr = dilate(r);
    auto interior = pr.interior_lattice_points();
    if (interior.empty()) continue;
    if (interior.size() == 1) {
      Polytope shifted = pr.translate(RVec(-to_rational(interior[0])));
      if (shifted.is_reflexive()) found = GorensteinData{r, interior[0]};
    }
    break;  // the first dilate with an interior point decides
  }

  // Cross-check against h*-palindromy: Gorenstein of index r iff the h*
  // vector is palindromic with r = d + 1 − deg.
  std::vector<Integer> psi = hstar_coefficients(*this);
  int deg = dim_;
  while (deg > 0 && psi[static_cast<size_t>(deg)] == 0) --deg;
  bool pal = palindromic(psi, deg);
  int pal_index = dim_ + 1 - deg;
  if (found.has_value() != pal || (found && found->index != pal_index))
    throw std::logic_error("Gorenstein search disagrees with h*-palindromy");
  return found;
}

GorensteinDual gorenstein_dual(const Polytope& p, const GorensteinData& gd) {
  Polytope model = p.dilate(gd.index).translate(RVec(-to_rational(gd.shift)));
  if (!model.is_reflexive()) throw std::invalid_argument("invalid Gorenstein data");
  GorensteinDual out;
  out.reflexive_model = model;
  out.dual = model.polar_dual();

  // x ↦ r·x − m preserves the lexicographic vertex order, so faces of p and
  // of the reflexive model share vertex indices.
  if (model.vertex_count() != p.vertex_count()) throw std::logic_error("Gorenstein model changed the vertex set");
  out.dual_of.resize(static_cast<size_t>(p.dim()));
  for (int k = 0; k < p.dim(); ++k) {
    const auto& bucket = p.face_lattice()[static_cast<size_t>(k)];
    out.dual_of[static_cast<size_t>(k)].reserve(bucket.size());
    for (const Face& f : bucket)
      out.dual_of[static_cast<size_t>(k)].push_back(model.dual_face(f, out.dual));
  }
  return out;
}

}  // namespace stringy
