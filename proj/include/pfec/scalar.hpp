#pragma once

// Dual scalar modes: Rational for exact identities and rank certificates,
// double for assembly and eigensolves.  Every double is a dyadic rational,
// so double -> Rational is exact and never a source of error.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace pfec {

namespace mp = boost::multiprecision;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <class S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using RatVec = VecX<Rational>;
using RatMat = MatX<Rational>;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double r) { return r; }

inline Rational to_rational(const Rational& r) { return r; }
inline Rational to_rational(double x) { return Rational(x); }  // exact, dyadic
inline Rational to_rational(long n) { return Rational(n); }

template <class S> struct scalar_traits;
template <> struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational from(const Rational& r) { return r; }
};
template <> struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double from(const Rational& r) { return to_double(r); }
};

// n! as a Rational; n stays small (total degrees), no memoization needed.
inline Rational rat_factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Rational rat_binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Rational b = 1;
  for (int i = 0; i < k; ++i) { b *= (n - i); b /= (i + 1); }
  return b;
}

inline MatX<double> to_double_mat(const RatMat& A) {
  MatX<double> B(A.rows(), A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) B(i, j) = to_double(A(i, j));
  return B;
}

inline VecX<double> to_double_vec(const RatVec& v) {
  VecX<double> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = to_double(v(i));
  return out;
}

inline RatMat to_rational_mat(const MatX<double>& A) {
  RatMat B(A.rows(), A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) B(i, j) = Rational(A(i, j));
  return B;
}

}  // namespace pfec
