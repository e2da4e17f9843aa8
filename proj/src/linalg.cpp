#include "stringy/linalg.hpp"

#include <stdexcept>

namespace stringy {

Integer content(const IVec& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
  return g;
}

IVec primitive(const IVec& v) {
  Integer g = content(v);
  if (g == 0) throw std::invalid_argument("zero vector has no primitive form");
  IVec w(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) w(i) = v(i) / g;
  return w;
}

IMat hnf_cols(const IMat& a, IMat* transform) {
  IMat h = a;
  const Eigen::Index m = h.rows(), n = h.cols();
  IMat u = IMat::Identity(n, n);

  Eigen::Index pivot_col = 0;
  for (Eigen::Index r = 0; r < m && pivot_col < n; ++r) {
    // Clear row r to a single positive pivot at pivot_col using column ops.
    while (true) {
      Eigen::Index best = -1;
      for (Eigen::Index j = pivot_col; j < n; ++j)
        if (h(r, j) != 0 && (best < 0 || abs(h(r, j)) < abs(h(r, best)))) best = j;
      if (best < 0) break;  // row r has no pivot; move to next row
      if (best != pivot_col) {
        h.col(pivot_col).swap(h.col(best));
        u.col(pivot_col).swap(u.col(best));
      }
      bool reduced = true;
      for (Eigen::Index j = pivot_col + 1; j < n; ++j) {
        if (h(r, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), h(r, j).get_mpz_t(), h(r, pivot_col).get_mpz_t());
        h.col(j) -= q * h.col(pivot_col);
        u.col(j) -= q * u.col(pivot_col);
        if (h(r, j) != 0) reduced = false;
      }
      if (reduced) break;
    }
    if (h(r, pivot_col) == 0) continue;
    if (h(r, pivot_col) < 0) {
      h.col(pivot_col) = -h.col(pivot_col);
      u.col(pivot_col) = -u.col(pivot_col);
    }
    // Reduce entries left of the pivot into [0, pivot).
    for (Eigen::Index j = 0; j < pivot_col; ++j) {
      if (h(r, j) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(r, j).get_mpz_t(), h(r, pivot_col).get_mpz_t());
      if (q != 0) {
        h.col(j) -= q * h.col(pivot_col);
        u.col(j) -= q * u.col(pivot_col);
      }
    }
    ++pivot_col;
  }
  if (transform) *transform = u;
  return h;
}

IMat row_basis(const IMat& a) {
  IMat h = hnf_cols(a.transpose());
  Eigen::Index r = 0;
  for (Eigen::Index j = 0; j < h.cols(); ++j)
    if (!h.col(j).isZero()) ++r;
  IMat basis(r, a.cols());
  for (Eigen::Index j = 0; j < r; ++j) basis.row(j) = h.col(j).transpose();
  return basis;
}

IMat integer_kernel(const IMat& a) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return IMat::Identity(n, n);
  IMat u;
  IMat h = hnf_cols(a, &u);
  std::vector<Eigen::Index> zero_cols;
  for (Eigen::Index j = 0; j < n; ++j)
    if (h.col(j).isZero()) zero_cols.push_back(j);
  IMat ker(static_cast<Eigen::Index>(zero_cols.size()), n);
  for (size_t i = 0; i < zero_cols.size(); ++i) ker.row(static_cast<Eigen::Index>(i)) = u.col(zero_cols[i]).transpose();
  return row_basis(ker);
}

SublatticeBasis saturated_basis(const IMat& points_rows) {
  return integer_kernel(integer_kernel(points_rows));
}

namespace {

// Fraction-free style elimination on a rational working copy; returns pivot
// columns and leaves `m` in row echelon form.
std::vector<Eigen::Index> echelonize(RMat& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index i = row; i < m.rows(); ++i)
      if (m(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row) m.row(p).swap(m.row(row));
    for (Eigen::Index i = row + 1; i < m.rows(); ++i) {
      if (m(i, col) == 0) continue;
      Rational f = m(i, col) / m(row, col);
      m.row(i) -= f * m.row(row);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<RVec> solve_rational(const RMat& a, const RVec& b) {
  const Eigen::Index m = a.rows(), n = a.cols();
  RMat aug(m, n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  std::vector<Eigen::Index> pivots = echelonize(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;  // 0 = nonzero
  RVec x = RVec::Zero(n);
  for (Eigen::Index i = static_cast<Eigen::Index>(pivots.size()) - 1; i >= 0; --i) {
    Eigen::Index c = pivots[static_cast<size_t>(i)];
    Rational s = aug(i, n);
    for (Eigen::Index j = c + 1; j < n; ++j) s -= aug(i, j) * x(j);
    x(c) = s / aug(i, c);
  }
  return x;
}

int rank(const RMat& a) {
  RMat m = a;
  return static_cast<int>(echelonize(m).size());
}

int rank(const IMat& a) { return rank(to_rational(a)); }

Rational det(const RMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("det of non-square matrix");
  RMat m = a;
  Rational d = 1;
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index i = col; i < m.rows(); ++i)
      if (m(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != col) {
      m.row(p).swap(m.row(col));
      d = -d;
    }
    d *= m(col, col);
    for (Eigen::Index i = col + 1; i < m.rows(); ++i) {
      if (m(i, col) == 0) continue;
      Rational f = m(i, col) / m(col, col);
      m.row(i) -= f * m.row(col);
    }
  }
  return d;
}

Integer det(const IMat& a) { return to_integer(det(to_rational(a))); }

std::optional<RVec> coordinates_in(const IMat& basis_rows, const RVec& x) {
  RMat bt = to_rational(IMat(basis_rows.transpose()));
  return solve_rational(bt, x);
}

}  // namespace stringy
