#pragma once

#include "stringy/polytope.hpp"
#include "stringy/volume.hpp"

#include <map>
#include <vector>

namespace stringy {

// A cone of a fan, identified by the sorted indices of its extreme rays.
struct Cone {
  std::vector<int> rays;
  int dim = 0;
  bool operator==(const Cone& o) const { return rays == o.rays; }
};

// Wall = (d−1)-cone between exactly two maximal cones.
struct Wall {
  Cone cone;
  int max1 = -1;
  int max2 = -1;
};

// ℚ-Cartier torus-invariant divisor D = Σ a_ρ D_ρ, one coefficient per ray.
struct TorusDivisor {
  RVec a;
};

// Per-maximal-cone linear forms m_σ with ⟨m_σ, u_ρ⟩ = −a_ρ on the rays of σ.
struct PLFunction {
  std::vector<RVec> m;
};

// Complete fan of rational polyhedral cones.  Rays are primitive and
// pairwise distinct; all cones, the wall adjacency, and per-cone facet data
// are derived eagerly.  Completeness is certified by every (d−1)-cone lying
// in exactly two maximal cones plus wall-connectedness of the maximal cones.
class Fan {
 public:
  static Fan from_cones(const IMat& rays, std::vector<std::vector<int>> max_cones);

  int dim() const { return static_cast<int>(rays_.rows()); }
  int ray_count() const { return static_cast<int>(rays_.cols()); }
  const IMat& rays() const { return rays_; }
  IVec ray(int i) const { return rays_.col(i); }
  const std::vector<Cone>& maximal_cones() const { return max_cones_; }
  const std::vector<std::vector<Cone>>& cones() const { return cones_; }  // by dim 0..d
  const std::vector<Wall>& walls() const { return walls_; }
  bool simplicial() const;

  IMat cone_ray_matrix(const Cone& c) const;
  Integer cone_volume(const Cone& c) const;
  Integer volume() const;  // v(Σ) = Σ over maximal cones

  // Faces of a fan cone: the derived ray sets contained in it.
  std::vector<std::vector<int>> cone_faces(const std::vector<int>& rayset) const;
  bool cone_contains(const Cone& c, const IVec& n) const;
  int maximal_cone_containing(const IVec& n) const;

 private:
  IMat rays_;
  std::vector<Cone> max_cones_;
  std::vector<std::vector<Cone>> cones_;
  std::vector<Wall> walls_;
  // per cone: all faces as sorted ray sets / facet inequality rows in ambient
  std::map<std::vector<int>, std::vector<std::vector<int>>> faces_of_;
  std::map<std::vector<int>, IMat> facet_normals_;  // for membership tests
};

// Fan of cones over the faces of a polytope with the origin interior.
Fan face_fan(const Polytope& p);

// Inner normal fan of a full-dimensional polytope.
Fan normal_fan(const Polytope& p);

// m_σ certificates for a divisor; throws "not Q-Cartier" when some maximal
// cone admits none.
PLFunction cartier_data(const Fan& fan, const TorusDivisor& d);

// κ with value −1 on every primitive ray generator; throws "not Q-Gorenstein".
PLFunction canonical_kappa(const Fan& fan);

Rational evaluate(const Fan& fan, const PLFunction& pl, const IVec& n);

// Least q with q·m_σ integral for every maximal cone.
Integer gorenstein_index(const Fan& fan);

TorusDivisor anticanonical(const Fan& fan);  // a_ρ = 1 for every ray

// Simplicial subdivision with the same rays: pulling triangulation of each
// non-simplicial cone in ray order (or the given priority order).
Fan pulling_subdivision(const Fan& fan, const std::vector<int>& priority = {});

// Δ_D = {y : ⟨y, u_ρ⟩ ≥ −a_ρ}; a polytope since the fan is complete.
Polytope divisor_polytope(const Fan& fan, const TorusDivisor& d);

// The face of Δ_D where every ray of σ is tight; may be lower-dimensional or
// empty.
Polytope divisor_face(const Fan& fan, const TorusDivisor& d, const Cone& sigma);
Polytope divisor_face(const Fan& fan, const TorusDivisor& d, const Polytope& delta_d, const Cone& sigma);

// Divisor whose polytope is P (inner-normal support data of the fan).
TorusDivisor divisor_of_polytope(const Fan& fan, const Polytope& p);

bool is_semiample(const Fan& fan, const TorusDivisor& d);
bool is_ample(const Fan& fan, const TorusDivisor& d);

// Saturated basis (rows) of M(σ) = {m : ⟨m, u⟩ = 0 ∀u ∈ σ}.
IMat orthogonal_chart(const Fan& fan, const Cone& sigma);

// l_D(σ) for a wall σ, from m_{σ'} − m_{σ''} = l_D(σ)·u with u primitive in
// M(σ), u ≤ 0 on σ' and ≥ 0 on σ''.
Rational wall_coefficient(const Fan& fan, const TorusDivisor& d, const Cone& wall);

}  // namespace stringy
