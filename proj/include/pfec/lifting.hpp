#pragma once

// Poincare liftings.  The pointwise operator
//   R_{l,a} u (x) = (x - a) .| int_0^1 t^{l-1} u(a + t(x-a)) dt
// is evaluated exactly through the Beta integral
//   int_0^1 t^{l-1+|k|} (1-t)^{|alpha|-|k|} dt
//     = (l+|k|-1)! (|alpha|-|k|)! / (l+|alpha|)!
// after splitting (a_i(1-t) + t x_i)^{alpha_i} binomially; for a = 0 only
// k = alpha survives and the factor degenerates to 1/(l + |alpha|).  The
// regularized operator averages R_{l,a} against a normalized polynomial
// bump theta over a box, which reduces to per-axis moment tables.

#include "pfec/integration.hpp"

namespace pfec {

namespace detail {

// I(m, k) = int_{-1}^{1} s^{2m} (1 - s^2)^k ds, exact
inline Rational even_bump_moment(int m, int k) {
  if (k == 0) return Rational(2) / (2 * m + 1);
  return even_bump_moment(m, k - 1) - even_bump_moment(m + 1, k - 1);
}

inline Rational beta_factor(int l, int kdeg, int adeg) {
  // int_0^1 t^{l-1+kdeg} (1-t)^{adeg} dt
  return rat_factorial(l + kdeg - 1) * rat_factorial(adeg) / rat_factorial(l + kdeg + adeg);
}

}  // namespace detail

template <class Scalar>
struct BumpWeight {
  VecX<Scalar> center;
  VecX<Scalar> halfwidth;
  int k = 2;

  BumpWeight(VecX<Scalar> c, VecX<Scalar> h, int power = 2)
      : center(std::move(c)), halfwidth(std::move(h)), k(power) {
    if (center.size() != halfwidth.size()) throw std::invalid_argument("BumpWeight: dimension mismatch");
    if (k < 1) throw std::invalid_argument("BumpWeight: power must be >= 1");
    for (Eigen::Index i = 0; i < halfwidth.size(); ++i)
      if (!(halfwidth(i) > Scalar(0))) throw std::invalid_argument("BumpWeight: halfwidth must be positive");
  }

  int dim() const { return static_cast<int>(center.size()); }

  // int theta_i(a) a^g da for the per-axis normalized bump factor
  Scalar moment(int axis, int g) const {
    auto key = std::make_pair(axis, g);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Rational c = to_rational(center(axis));
    Rational h = to_rational(halfwidth(axis));
    Rational norm = detail::even_bump_moment(0, k);
    Rational s = 0;
    // sum_j C(g,j) c^{g-j} h^j I(j/2, k) / I(0, k), even j only
    for (int j = 0; j <= g; j += 2) {
      Rational hp = 1;
      for (int t = 0; t < j; ++t) hp *= h;
      Rational cp = 1;
      for (int t = 0; t < g - j; ++t) cp *= c;
      s += rat_binomial(g, j) * cp * hp * detail::even_bump_moment(j / 2, k) / norm;
    }
    Scalar out = scalar_traits<Scalar>::from(s);
    cache_.emplace(key, out);
    return out;
  }

  // (theta, f)_{0} = int theta(a) f(a) da for a 0-form f
  Scalar weighted_mean(const PolyForm<Scalar>& f) const {
    if (f.form_degree() != 0) throw std::invalid_argument("weighted_mean: expects a 0-form");
    if (f.ambient_dim() != dim()) throw std::invalid_argument("weighted_mean: dimension mismatch");
    Scalar s(0);
    for (const auto& [key, c] : f.terms()) {
      Scalar m = c;
      for (int i = 0; i < dim(); ++i) m *= moment(i, key.exp[i]);
      s += m;
    }
    return s;
  }

  // theta expanded as a polynomial 0-form (tests integrate it exactly)
  PolyForm<Scalar> density() const {
    PolyForm<Scalar> out = PolyForm<Scalar>::constant(dim(), Scalar(1));
    for (int i = 0; i < dim(); ++i) {
      Rational c = to_rational(center(i));
      Rational h = to_rational(halfwidth(i));
      Rational norm = detail::even_bump_moment(0, k) * h;
      // (1 - ((a_i - c)/h)^2)^k / (h I(0,k))
      PolyForm<Scalar> base(dim(), 0);
      base.add(0, zero_mono(), scalar_traits<Scalar>::from(1 - c * c / (h * h)));
      Mono e1 = zero_mono();
      e1[i] = 1;
      base.add(0, e1, scalar_traits<Scalar>::from(2 * c / (h * h)));
      Mono e2 = zero_mono();
      e2[i] = 2;
      base.add(0, e2, scalar_traits<Scalar>::from(Rational(-1) / (h * h)));
      PolyForm<Scalar> pw = PolyForm<Scalar>::constant(dim(), scalar_traits<Scalar>::from(Rational(1) / norm));
      for (int t = 0; t < k; ++t) pw = wedge(pw, base);
      out = wedge(out, pw);
    }
    return out;
  }

 private:
  mutable std::map<std::pair<int, int>, Scalar> cache_;
};

// R_{l,a} u at a fixed center; l = form degree of u, output degree l-1
template <class Scalar>
PolyForm<Scalar> poincare_point(const VecX<Scalar>& a, const PolyForm<Scalar>& u) {
  int d = u.ambient_dim(), l = u.form_degree();
  if (l < 1) throw std::invalid_argument("poincare_point: needs form degree >= 1");
  if (a.size() != d) throw std::invalid_argument("poincare_point: dimension mismatch");
  PolyForm<Scalar> w(d, l);  // int_0^1 t^{l-1} u(a + t(x-a)) dt
  for (const auto& [key, c] : u.terms()) {
    const Mono& alpha = key.exp;
    int qa = total_degree(alpha);
    Mono k = zero_mono();
    while (true) {
      Scalar coef = c;
      for (int i = 0; i < d; ++i) {
        coef *= scalar_traits<Scalar>::from(rat_binomial(alpha[i], k[i]));
        for (int t = 0; t < alpha[i] - k[i]; ++t) coef *= a(i);
      }
      int qk = total_degree(k);
      coef *= scalar_traits<Scalar>::from(detail::beta_factor(l, qk, qa - qk));
      w.add(key.mask, k, coef);
      // odometer over k <= alpha
      int axis = 0;
      while (axis < d && k[axis] == alpha[axis]) k[axis++] = 0;
      if (axis == d) break;
      ++k[axis];
    }
  }
  return interior_product(a, w);
}

// R_l u = int_B theta(a) R_{l,a} u da, exact for polynomial u
template <class Scalar>
PolyForm<Scalar> poincare_regularized(const BumpWeight<Scalar>& theta, const PolyForm<Scalar>& u) {
  int d = u.ambient_dim(), l = u.form_degree();
  if (l < 1) throw std::invalid_argument("poincare_regularized: needs form degree >= 1");
  if (theta.dim() != d) throw std::invalid_argument("poincare_regularized: dimension mismatch");
  // accumulate (mask, x-mono, a-mono) -> coefficient before the a-integration
  std::map<std::pair<TermKey, Mono>, Scalar> acc;
  auto bump = [&acc](std::uint8_t mask, const Mono& xe, const Mono& ae, const Scalar& v) {
    if (v == Scalar(0)) return;
    auto key = std::make_pair(TermKey{mask, xe}, ae);
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(key, v);
    else {
      it->second += v;
      if (it->second == Scalar(0)) acc.erase(it);
    }
  };
  for (const auto& [key, c] : u.terms()) {
    const Mono& alpha = key.exp;
    int qa = total_degree(alpha);
    Mono k = zero_mono();
    while (true) {
      Scalar coef = c;
      for (int i = 0; i < d; ++i) coef *= scalar_traits<Scalar>::from(rat_binomial(alpha[i], k[i]));
      int qk = total_degree(k);
      coef *= scalar_traits<Scalar>::from(detail::beta_factor(l, qk, qa - qk));
      Mono ae = zero_mono();
      for (int i = 0; i < d; ++i) ae[i] = static_cast<std::uint8_t>(alpha[i] - k[i]);
      // contraction (x - a) .| (coef x^k a^ae dx_I)
      for (int j = 0; j < d; ++j) {
        if (!(key.mask & (1u << j))) continue;
        Scalar s = (remove_sign(key.mask, j) < 0) ? Scalar(-1) : Scalar(1);
        std::uint8_t m = static_cast<std::uint8_t>(key.mask & ~(1u << j));
        bump(m, mono_bump(k, j), ae, coef * s);
        bump(m, k, mono_bump(ae, j), -coef * s);
      }
      int axis = 0;
      while (axis < d && k[axis] == alpha[axis]) k[axis++] = 0;
      if (axis == d) break;
      ++k[axis];
    }
  }
  PolyForm<Scalar> out(d, l - 1);
  for (const auto& [key, v] : acc) {
    Scalar c = v;
    for (int i = 0; i < d; ++i) c *= theta.moment(i, key.second[i]);
    out.add(key.first.mask, key.first.exp, c);
  }
  return out;
}

// Residual of the homotopy identity; identically zero on polynomial forms.
//   l = 0:       R_1(du) - u + (theta, u) 1     (point: (theta,u) -> u(a))
//   0 < l < d:   d R_l u + R_{l+1} du - u
//   l = d:       d R_d u - u
template <class Scalar>
PolyForm<Scalar> homotopy_residual(const BumpWeight<Scalar>& theta, const PolyForm<Scalar>& u) {
  int d = u.ambient_dim(), l = u.form_degree();
  if (l == 0) {
    PolyForm<Scalar> r = poincare_regularized(theta, exterior_derivative(u)) - u;
    r += PolyForm<Scalar>::constant(d, theta.weighted_mean(u));
    return r;
  }
  if (l == d) return exterior_derivative(poincare_regularized(theta, u)) - u;
  return exterior_derivative(poincare_regularized(theta, u)) +
         poincare_regularized(theta, exterior_derivative(u)) - u;
}

template <class Scalar>
PolyForm<Scalar> homotopy_residual(const VecX<Scalar>& a, const PolyForm<Scalar>& u) {
  int d = u.ambient_dim(), l = u.form_degree();
  if (l == 0) {
    PolyForm<Scalar> r = poincare_point(a, exterior_derivative(u)) - u;
    r += PolyForm<Scalar>::constant(d, u.eval(a).at(0));
    return r;
  }
  if (l == d) return exterior_derivative(poincare_point(a, u)) - u;
  return exterior_derivative(poincare_point(a, u)) + poincare_point(a, exterior_derivative(u)) - u;
}

}  // namespace pfec
