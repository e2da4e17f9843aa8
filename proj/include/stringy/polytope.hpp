#pragma once

#include "stringy/linalg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace stringy {

// Inequality ⟨normal, x⟩ ≥ offset with a primitive integral normal.
struct FacetIneq {
  IVec normal;
  Rational offset;
};

// A face is identified by the set of parent vertices lying on it.
struct Face {
  std::vector<int> verts;  // sorted indices into the parent's vertex matrix
  int dim = 0;
};

struct LatticePointInfo {
  IVec p;
  bool boundary = false;  // relative boundary for lower-dimensional polytopes
};

struct GorensteinData {
  int index = 0;  // smallest r with r·P − shift reflexive
  IVec shift;     // the unique interior lattice point of r·P
};

// Facet inequalities of cone(columns of `gens`), computed by incremental
// double description on the dual side.  Requires the generators to span the
// working space; normals are primitive integral, deterministically ordered.
struct ConeFacets {
  IMat normals;                            // rows
  std::vector<std::vector<int>> incident;  // per facet: generator indices with equality
};
ConeFacets cone_facets(const RMat& gens);

// Convex polytope with exact rational vertices.  Lattice polytopes are the
// integral special case (`is_lattice`).  Vertices are canonicalized: duplicate
// and non-extreme input points removed, columns sorted lexicographically.
// Facets and the face lattice are computed once at construction; instances
// are immutable afterwards and safe to share across threads.
class Polytope {
 public:
  Polytope() : verts_(0, 0), chart_(0, 0), base_(0), chart_verts_(0, 0) {}  // empty, ambient 0

  static Polytope from_vertices(const RMat& points);  // columns are points
  static Polytope from_vertices(const IMat& points);
  static Polytope empty(int ambient_dim);

  int ambient_dim() const { return static_cast<int>(verts_.rows()); }
  int dim() const { return dim_; }  // −1 when empty
  int vertex_count() const { return static_cast<int>(verts_.cols()); }
  bool is_empty() const { return verts_.cols() == 0; }
  const RMat& vertices() const { return verts_; }
  RVec vertex(int i) const { return verts_.col(i); }

  bool is_lattice() const;
  IMat lattice_vertices() const;

  // Full-dimensional polytopes only; lower-dimensional geometry lives in the
  // chart (see chart_basis / chart_vertices).
  const std::vector<FacetIneq>& facet_description() const;

  // Saturated basis (rows) of the direction space of the affine hull, and the
  // vertex coordinates in that chart: c(x) solves chartᵀ·c = x − base.  For
  // full-dimensional polytopes the chart is the identity (base still the
  // first vertex).  chart_facets are inequalities on chart coordinates.
  const IMat& chart_basis() const { return chart_; }
  const RVec& chart_base() const { return base_; }
  const RMat& chart_vertices() const { return chart_verts_; }
  const std::vector<FacetIneq>& chart_facets() const { return facets_; }

  // faces()[k] = k-dimensional faces, k = 0..dim(); the polytope itself is
  // the unique top face.  Faces of each dimension are sorted by vertex set.
  const std::vector<std::vector<Face>>& face_lattice() const;
  const Face& full_face() const;
  Polytope face_polytope(const Face& f) const;

  std::vector<LatticePointInfo> lattice_points() const;
  Integer lattice_point_count() const;
  Integer interior_lattice_point_count() const;
  std::vector<IVec> interior_lattice_points() const;

  bool contains(const RVec& x) const;
  bool has_interior_origin() const;

  Polytope polar_dual() const;  // error "dual undefined" unless 0 is interior
  bool is_reflexive() const;
  // Index of the polar-dual vertex corresponding to facet j.
  int dual_vertex_of_facet(const Polytope& dual, int facet) const;
  // θ* = {y ∈ P* : ⟨y,x⟩ = −1 ∀x ∈ θ}; error for the full face.
  Face dual_face(const Face& theta, const Polytope& dual) const;

  std::optional<GorensteinData> gorenstein_data() const;

  Polytope dilate(const Integer& k) const;
  Polytope translate(const RVec& t) const;

  // Sorted position of a face in face_lattice()[f.dim], or -1.
  int face_index(const Face& f) const;

 private:
  void build();

  RMat verts_;       // ambient coordinates, canonical order
  int dim_ = -1;
  IMat chart_;       // dim × ambient, saturated basis rows
  RVec base_;        // first canonical vertex
  RMat chart_verts_; // dim × n
  std::vector<FacetIneq> facets_;             // in chart coordinates
  std::vector<FacetIneq> ambient_facets_;     // only when dim == ambient
  std::vector<std::vector<int>> facet_verts_; // per facet, sorted vertex indices
  std::vector<std::vector<Face>> faces_;
};

Polytope minkowski_sum(const Polytope& p, const Polytope& q);

// The dual Gorenstein polytope realized on the reflexive model (rP − m)*,
// with the order-reversing face pairing θ ↦ θ*.
struct GorensteinDual {
  Polytope reflexive_model;  // rP − m
  Polytope dual;             // (rP − m)*, a lattice polytope
  // dual_of[k][i] = the face of `dual` paired with face_lattice()[k][i] of P,
  // for proper faces (k < dim).
  std::vector<std::vector<Face>> dual_of;
};
GorensteinDual gorenstein_dual(const Polytope& p, const GorensteinData& gd);

}  // namespace stringy
