#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace Eigen {

// Exact GMP scalars plugged into Eigen's dense types.  Costs are rough
// relative weights; they only steer Eigen's lazy-evaluation heuristics.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpz_class NonInteger;
  typedef mpz_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace stringy {

using Integer = mpz_class;
using Rational = mpq_class;

using IMat = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;
using IVec = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;
using RMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Integer to_integer(const Rational& q) {
  if (!is_integral(q)) throw std::domain_error("expected integral rational: " + q.get_str());
  return q.get_num();
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

// Accepts "p" or "p/q"; normalizes sign and reduces.
inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline RVec to_rational(const IVec& v) {
  RVec r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = Rational(v(i));
  return r;
}

inline RMat to_rational(const IMat& m) {
  RMat r(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) r(i, j) = Rational(m(i, j));
  return r;
}

inline IVec to_integer(const RVec& v) {
  IVec r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = to_integer(v(i));
  return r;
}

inline IMat to_integer(const RMat& m) {
  IMat r(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) r(i, j) = to_integer(m(i, j));
  return r;
}

inline bool is_integral(const RVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_integral(v(i))) return false;
  return true;
}

inline bool is_integral(const RMat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!is_integral(m(i, j))) return false;
  return true;
}

inline Integer lcm_denominators(const RVec& v) {
  Integer l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) l = lcm(l, v(i).get_den());
  return l;
}

// Exact lexicographic comparison of column vectors.
inline int lex_compare(const RVec& a, const RVec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    int c = cmp(a(i), b(i));
    if (c != 0) return c;
  }
  return 0;
}

inline int lex_compare(const IVec& a, const IVec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    int c = cmp(a(i), b(i));
    if (c != 0) return c;
  }
  return 0;
}

inline Integer binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

}  // namespace stringy
