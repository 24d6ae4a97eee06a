#pragma once

// Exact integration of polynomial forms over affine cells.  Monomial
// integrals on the reference simplex/box have closed rational forms, so the
// Rational mode is exact and the double mode is exactly-rounded per term.

#include <cmath>

#include "pfec/polyform.hpp"

namespace pfec {

enum class CellKind { Simplex, Box };

template <class Scalar>
struct CellGeom {
  CellKind kind = CellKind::Simplex;
  AffineMap<Scalar> map;  // reference cell -> K

  int dim() const { return map.to(); }
  Scalar jac_abs() const {
    Scalar d = affine_det(map);
    return d < Scalar(0) ? Scalar(-d) : d;
  }
};

template <class Scalar>
CellGeom<Scalar> reference_cell(CellKind kind, int d) {
  return {kind, affine_identity<Scalar>(d)};
}

// int over the unit reference cell of x^e
inline Rational monomial_integral_ref(CellKind kind, int dim, const Mono& e) {
  if (kind == CellKind::Box) {
    Rational r = 1;
    for (int i = 0; i < dim; ++i) r /= (e[i] + 1);
    return r;
  }
  Rational num = 1;
  for (int i = 0; i < dim; ++i) num *= rat_factorial(e[i]);
  return num / rat_factorial(total_degree(e) + dim);
}

template <class Scalar>
Scalar integrate_ref(const PolyForm<Scalar>& f, CellKind kind) {
  if (f.form_degree() != 0) throw std::invalid_argument("integrate_ref: expects a 0-form");
  Scalar s(0);
  for (const auto& [k, c] : f.terms())
    s += c * scalar_traits<Scalar>::from(monomial_integral_ref(kind, f.ambient_dim(), k.exp));
  return s;
}

// int_K f dx for a 0-form f given in K's ambient coordinates
template <class Scalar>
Scalar integrate_cell(const PolyForm<Scalar>& f, const CellGeom<Scalar>& K) {
  return K.jac_abs() * integrate_ref(pullback(K.map, f), K.kind);
}

// L2 inner product int_K u ^ *v = sum_I int_K u_I v_I (Euclidean Hodge star)
template <class Scalar>
Scalar l2_inner(const PolyForm<Scalar>& u, const PolyForm<Scalar>& v, const CellGeom<Scalar>& K) {
  if (u.ambient_dim() != v.ambient_dim() || u.form_degree() != v.form_degree())
    throw std::invalid_argument("l2_inner: dimension or degree mismatch");
  PolyForm<Scalar> g(u.ambient_dim(), 0);
  for (auto m : masks_of_degree(u.ambient_dim(), u.form_degree()))
    g += wedge(u.comp(m), v.comp(m));
  return integrate_cell(g, K);
}

template <class Scalar>
MatX<Scalar> gram_matrix(const std::vector<PolyForm<Scalar>>& basis, const CellGeom<Scalar>& K) {
  int n = static_cast<int>(basis.size());
  MatX<Scalar> G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      G(i, j) = l2_inner(basis[i], basis[j], K);
      G(j, i) = G(i, j);
    }
  return G;
}

// Gauss-Legendre nodes/weights on [0,1]; Newton on the recurrence, double only.
inline void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[n - 1 - i] = 0.5 * (1.0 + t);
    w[n - 1 - i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
}

// tensor rule on the unit box, Duffy-collapsed rule on the unit simplex;
// exact through the requested total order with margin
struct QuadRule {
  std::vector<VecX<double>> points;
  std::vector<double> weights;
};

inline QuadRule quadrature_ref(CellKind kind, int dim, int order) {
  int n = order / 2 + 2;  // per-axis Gauss points; +2 absorbs the Duffy Jacobian
  std::vector<double> x, w;
  gauss_legendre_01(n, x, w);
  QuadRule q;
  if (dim == 0) {
    q.points.push_back(VecX<double>(0));
    q.weights.push_back(1.0);
    return q;
  }
  std::vector<int> idx(dim, 0);
  while (true) {
    VecX<double> p(dim);
    double wt = 1.0;
    for (int a = 0; a < dim; ++a) {
      p(a) = x[idx[a]];
      wt *= w[idx[a]];
    }
    if (kind == CellKind::Simplex && dim == 2) {
      double u = p(0), v = p(1);
      p(0) = u;
      p(1) = v * (1.0 - u);
      wt *= (1.0 - u);
    } else if (kind == CellKind::Simplex && dim == 3) {
      double u = p(0), v = p(1), s = p(2);
      p(0) = u;
      p(1) = v * (1.0 - u);
      p(2) = s * (1.0 - u) * (1.0 - v);
      wt *= (1.0 - u) * (1.0 - u) * (1.0 - v);
    }
    q.points.push_back(p);
    q.weights.push_back(wt);
    int a = 0;
    while (a < dim && ++idx[a] == n) idx[a++] = 0;
    if (a == dim) break;
  }
  return q;
}

}  // namespace pfec
