#include "stringy/ehrhart.hpp"

#include "stringy/volume.hpp"

#include <stdexcept>

namespace stringy {

namespace {

// Reduce a lattice polytope to a full-dimensional one in its chart.
Polytope full_dimensional(const Polytope& p) {
  if (p.dim() == p.ambient_dim()) return p;
  if (!is_integral(p.chart_vertices())) throw std::domain_error("h* needs a lattice polytope");
  return Polytope::from_vertices(p.chart_vertices());
}

}  // namespace

std::vector<Integer> dilate_counts(const Polytope& p, int kmax) {
  if (!p.is_lattice()) throw std::domain_error("dilate counts need a lattice polytope");
  std::vector<Integer> counts;
  counts.reserve(static_cast<size_t>(kmax) + 1);
  for (int k = 0; k <= kmax; ++k) counts.push_back(p.dilate(k).lattice_point_count());
  return counts;
}

std::vector<Integer> hstar_coefficients(const Polytope& p) {
  Polytope q = full_dimensional(p);
  const int d = q.dim();
  std::vector<Integer> counts = dilate_counts(q, d);
  std::vector<Integer> psi(static_cast<size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) {
    Integer s = 0;
    for (int i = 0; i <= j; ++i) {
      Integer term = binomial(d + 1, i) * counts[static_cast<size_t>(j - i)];
      s += (i % 2 == 0) ? term : -term;
    }
    psi[static_cast<size_t>(j)] = s;
  }
  if (psi[0] != 1) throw std::logic_error("h* normalization failed");
  Integer total = 0;
  for (const Integer& c : psi) {
    if (c < 0) throw std::logic_error("negative h* coefficient");
    total += c;
  }
  if (Rational(total) != normalized_volume(q)) throw std::logic_error("h* sum differs from the normalized volume");
  return psi;
}

HStarVector hstar(const Polytope& p) {
  HStarVector h;
  h.psi = hstar_coefficients(p);
  h.degree = static_cast<int>(h.psi.size()) - 1;
  while (h.degree > 0 && h.psi[static_cast<size_t>(h.degree)] == 0) --h.degree;
  // Reflexive polytopes must come out palindromic.
  if (p.dim() == p.ambient_dim() && p.is_reflexive()) {
    const int d = p.dim();
    for (int j = 0; j <= d; ++j)
      if (h.psi[static_cast<size_t>(j)] != h.psi[static_cast<size_t>(d - j)])
        throw std::logic_error("reflexive polytope with non-palindromic h*");
  }
  return h;
}

int codegree(const Polytope& p) {
  HStarVector h = hstar(p);
  return p.dim() + 1 - h.degree;
}

}  // namespace stringy
