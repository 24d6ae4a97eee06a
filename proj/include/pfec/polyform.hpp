#pragma once

// Differential l-forms with polynomial coefficients over R^d, d <= 3.
// Terms live in a sorted map keyed by (axis bitmask, exponent tuple), no
// zero coefficients are stored, so equality is termwise and deterministic.
// Scalar is Rational (exact mode) or double (float mode).

#include <map>
#include <stdexcept>
#include <vector>

#include "pfec/multiindex.hpp"
#include "pfec/scalar.hpp"

namespace pfec {

template <class Scalar>
struct AffineMap {
  MatX<Scalar> A;  // to x from, need not be square (facet inclusions)
  VecX<Scalar> b;

  int from() const { return static_cast<int>(A.cols()); }
  int to() const { return static_cast<int>(A.rows()); }
  VecX<Scalar> operator()(const VecX<Scalar>& x) const { return A * x + b; }
};

template <class Scalar>
AffineMap<Scalar> affine_identity(int d) {
  return {MatX<Scalar>::Identity(d, d), VecX<Scalar>::Zero(d)};
}

// f(g(x)); defined whenever g maps into f's domain
template <class Scalar>
AffineMap<Scalar> compose(const AffineMap<Scalar>& f, const AffineMap<Scalar>& g) {
  if (f.from() != g.to()) throw std::invalid_argument("compose: dimension mismatch");
  return {f.A * g.A, f.A * g.b + f.b};
}

template <class Scalar>
Scalar affine_det(const AffineMap<Scalar>& m) {
  if (m.from() != m.to()) throw std::invalid_argument("affine_det: not square");
  const auto& A = m.A;
  switch (m.to()) {
    case 1: return A(0, 0);
    case 2: return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    case 3:
      return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
             A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
             A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
    default: throw std::invalid_argument("affine_det: dim > 3");
  }
}

template <class Scalar>
AffineMap<Scalar> affine_inverse(const AffineMap<Scalar>& m) {
  Scalar det = affine_det(m);
  if (det == Scalar(0)) throw std::invalid_argument("affine_inverse: singular map");
  const auto& A = m.A;
  int d = m.to();
  MatX<Scalar> inv(d, d);
  if (d == 1) {
    inv(0, 0) = Scalar(1) / det;
  } else if (d == 2) {
    inv(0, 0) = A(1, 1) / det;
    inv(0, 1) = -A(0, 1) / det;
    inv(1, 0) = -A(1, 0) / det;
    inv(1, 1) = A(0, 0) / det;
  } else {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
        inv(j, i) = (A(i1, j1) * A(i2, j2) - A(i1, j2) * A(i2, j1)) / det;
      }
  }
  return {inv, -(inv * m.b)};
}

template <class Scalar>
class PolyForm {
 public:
  using Terms = std::map<TermKey, Scalar>;

  PolyForm() = default;
  PolyForm(int dim, int form_deg) : dim_(dim), deg_(form_deg) {
    if (dim < 0 || dim > 3) throw std::invalid_argument("PolyForm: ambient dim out of range");
    if (form_deg < 0 || form_deg > dim) throw std::invalid_argument("PolyForm: form degree out of range");
  }

  static PolyForm monomial(int dim, std::uint8_t mask, const Mono& exp, const Scalar& c) {
    PolyForm f(dim, popcount(mask));
    f.add(mask, exp, c);
    return f;
  }
  static PolyForm constant(int dim, const Scalar& c) { return monomial(dim, 0, zero_mono(), c); }

  int ambient_dim() const { return dim_; }
  int form_degree() const { return deg_; }
  bool is_zero() const { return terms_.empty(); }

  // max total degree of any coefficient monomial; -1 for the zero form
  int poly_degree() const {
    int q = -1;
    for (const auto& [k, c] : terms_) q = std::max(q, total_degree(k.exp));
    return q;
  }

  const Terms& terms() const { return terms_; }

  void add(std::uint8_t mask, const Mono& exp, const Scalar& c) {
    if (popcount(mask) != deg_ || mask >= (1u << dim_))
      throw std::invalid_argument("PolyForm::add: bad index tuple");
    for (int i = dim_; i < 3; ++i)
      if (exp[i] != 0) throw std::invalid_argument("PolyForm::add: exponent beyond ambient dim");
    if (c == Scalar(0)) return;
    TermKey key{mask, exp};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, c);
    } else {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
  }

  PolyForm& operator+=(const PolyForm& o) {
    check_same(o);
    for (const auto& [k, c] : o.terms_) add(k.mask, k.exp, c);
    return *this;
  }
  PolyForm& operator-=(const PolyForm& o) {
    check_same(o);
    for (const auto& [k, c] : o.terms_) add(k.mask, k.exp, -c);
    return *this;
  }
  PolyForm& operator*=(const Scalar& s) {
    if (s == Scalar(0)) { terms_.clear(); return *this; }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
  friend PolyForm operator*(PolyForm a, const Scalar& s) { return a *= s; }
  friend PolyForm operator*(const Scalar& s, PolyForm a) { return a *= s; }
  PolyForm operator-() const { PolyForm r = *this; r *= Scalar(-1); return r; }

  bool operator==(const PolyForm& o) const {
    return dim_ == o.dim_ && deg_ == o.deg_ && terms_ == o.terms_;
  }

  // coefficient of dx_mask as a 0-form
  PolyForm comp(std::uint8_t mask) const {
    PolyForm f(dim_, 0);
    auto lo = terms_.lower_bound(TermKey{mask, zero_mono()});
    for (auto it = lo; it != terms_.end() && it->first.mask == mask; ++it)
      f.add(0, it->first.exp, it->second);
    return f;
  }

  // component values at a point, keyed by mask
  std::map<std::uint8_t, Scalar> eval(const VecX<Scalar>& x) const {
    if (x.size() != dim_) throw std::invalid_argument("PolyForm::eval: dimension mismatch");
    std::map<std::uint8_t, Scalar> out;
    for (auto m : masks_of_degree(dim_, deg_)) out[m] = Scalar(0);
    for (const auto& [k, c] : terms_) {
      Scalar v = c;
      for (int i = 0; i < dim_; ++i)
        for (int e = 0; e < k.exp[i]; ++e) v *= x(i);
      out[k.mask] += v;
    }
    return out;
  }

 private:
  void check_same(const PolyForm& o) const {
    if (dim_ != o.dim_ || deg_ != o.deg_)
      throw std::invalid_argument("PolyForm: dimension or degree mismatch");
  }

  int dim_ = 0;
  int deg_ = 0;
  Terms terms_;
};

template <class To, class From>
PolyForm<To> polyform_cast(const PolyForm<From>& u) {
  PolyForm<To> out(u.ambient_dim(), u.form_degree());
  for (const auto& [k, c] : u.terms()) out.add(k.mask, k.exp, scalar_traits<To>::from(to_rational(c)));
  return out;
}

template <class Scalar>
PolyForm<Scalar> wedge(const PolyForm<Scalar>& u, const PolyForm<Scalar>& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw std::invalid_argument("wedge: dimension mismatch");
  int l = u.form_degree() + v.form_degree();
  if (l > u.ambient_dim()) throw std::invalid_argument("wedge: degree overflow");
  PolyForm<Scalar> out(u.ambient_dim(), l);
  for (const auto& [ku, cu] : u.terms())
    for (const auto& [kv, cv] : v.terms()) {
      if (ku.mask & kv.mask) continue;
      Scalar c = cu * cv;
      if (merge_sign(ku.mask, kv.mask) < 0) c = -c;
      out.add(static_cast<std::uint8_t>(ku.mask | kv.mask), mono_add(ku.exp, kv.exp), c);
    }
  return out;
}

template <class Scalar>
PolyForm<Scalar> exterior_derivative(const PolyForm<Scalar>& u) {
  int d = u.ambient_dim(), l = u.form_degree();
  if (l == d) return PolyForm<Scalar>(d, l);  // top form: du = 0 (callers only test is_zero)
  PolyForm<Scalar> out(d, l + 1);
  for (const auto& [k, c] : u.terms())
    for (int i = 0; i < d; ++i) {
      if (k.exp[i] == 0 || (k.mask & (1u << i))) continue;
      Scalar nc = c * Scalar(static_cast<int>(k.exp[i]));
      if (insert_sign(k.mask, i) < 0) nc = -nc;
      Mono e = k.exp;
      e[i] -= 1;
      out.add(static_cast<std::uint8_t>(k.mask | (1u << i)), e, nc);
    }
  return out;
}

// (x - a) .| u ; contraction with the position field centered at a
template <class Scalar>
PolyForm<Scalar> interior_product(const VecX<Scalar>& a, const PolyForm<Scalar>& u) {
  int d = u.ambient_dim(), l = u.form_degree();
  if (l == 0) throw std::invalid_argument("interior_product: 0-form");
  if (a.size() != d) throw std::invalid_argument("interior_product: dimension mismatch");
  PolyForm<Scalar> out(d, l - 1);
  for (const auto& [k, c] : u.terms())
    for (int j = 0; j < d; ++j) {
      if (!(k.mask & (1u << j))) continue;
      Scalar s = (remove_sign(k.mask, j) < 0) ? Scalar(-1) : Scalar(1);
      std::uint8_t m = static_cast<std::uint8_t>(k.mask & ~(1u << j));
      out.add(m, mono_bump(k.exp, j), c * s);           // + x_j part
      if (a(j) != Scalar(0)) out.add(m, k.exp, -c * s * a(j));  // - a_j part
    }
  return out;
}

template <class Scalar>
PolyForm<Scalar> koszul(const PolyForm<Scalar>& u) {
  return interior_product(VecX<Scalar>::Zero(u.ambient_dim()).eval(), u);
}

namespace detail {

// f(phi(x)) for a 0-form f; expands prod_i (row_i(A) x + b_i)^{alpha_i}
template <class Scalar>
PolyForm<Scalar> substitute_affine(const AffineMap<Scalar>& phi, const PolyForm<Scalar>& f) {
  int dto = phi.to(), dfrom = phi.from();
  // linear polynomials per target coordinate
  std::vector<PolyForm<Scalar>> lin;
  lin.reserve(dto);
  for (int i = 0; i < dto; ++i) {
    PolyForm<Scalar> L(dfrom, 0);
    L.add(0, zero_mono(), phi.b(i));
    for (int j = 0; j < dfrom; ++j) {
      Mono e = zero_mono();
      e[j] = 1;
      L.add(0, e, phi.A(i, j));
    }
    lin.push_back(std::move(L));
  }
  PolyForm<Scalar> out(dfrom, 0);
  for (const auto& [k, c] : f.terms()) {
    PolyForm<Scalar> t = PolyForm<Scalar>::constant(dfrom, c);
    for (int i = 0; i < dto; ++i)
      for (int e = 0; e < k.exp[i]; ++e) t = wedge(t, lin[i]);
    out += t;
  }
  return out;
}

template <class Scalar>
Scalar minor_det(const MatX<Scalar>& A, const std::vector<int>& rows, const std::vector<int>& cols) {
  switch (rows.size()) {
    case 0: return Scalar(1);
    case 1: return A(rows[0], cols[0]);
    case 2:
      return A(rows[0], cols[0]) * A(rows[1], cols[1]) - A(rows[0], cols[1]) * A(rows[1], cols[0]);
    case 3:
      return A(rows[0], cols[0]) * (A(rows[1], cols[1]) * A(rows[2], cols[2]) - A(rows[1], cols[2]) * A(rows[2], cols[1])) -
             A(rows[0], cols[1]) * (A(rows[1], cols[0]) * A(rows[2], cols[2]) - A(rows[1], cols[2]) * A(rows[2], cols[0])) +
             A(rows[0], cols[2]) * (A(rows[1], cols[0]) * A(rows[2], cols[1]) - A(rows[1], cols[1]) * A(rows[2], cols[0]));
    default: throw std::invalid_argument("minor_det: order > 3");
  }
}

}  // namespace detail

// phi^* u for affine phi; u lives over phi's target space, the result over
// its source.  Functorial and commutes with d and wedge.
template <class Scalar>
PolyForm<Scalar> pullback(const AffineMap<Scalar>& phi, const PolyForm<Scalar>& u) {
  if (u.ambient_dim() != phi.to()) throw std::invalid_argument("pullback: dimension mismatch");
  int dfrom = phi.from(), l = u.form_degree();
  if (l > dfrom) return PolyForm<Scalar>(dfrom, dfrom);  // no l-tuples downstairs: zero form
  PolyForm<Scalar> out(dfrom, l);
  auto to_masks = masks_of_degree(phi.to(), l);    // grouping source terms by mask
  auto from_masks = masks_of_degree(dfrom, l);
  for (auto mi : to_masks) {
    PolyForm<Scalar> coeff = u.comp(mi);
    if (coeff.is_zero()) continue;
    PolyForm<Scalar> moved = detail::substitute_affine(phi, coeff);
    if (moved.is_zero()) continue;
    auto rows = mask_axes(mi);
    for (auto mj : from_masks) {
      Scalar m = detail::minor_det(phi.A, rows, mask_axes(mj));
      if (m == Scalar(0)) continue;
      for (const auto& [k, c] : moved.terms()) out.add(mj, k.exp, c * m);
    }
  }
  return out;
}

}  // namespace pfec
