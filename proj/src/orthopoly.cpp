#include "pfec/orthopoly.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "pfec/rational_linalg.hpp"

namespace pfec {
namespace {

PolyForm<Rational> coordinate(int dim, int axis) {
  return PolyForm<Rational>::monomial(dim, 0, mono_bump(zero_mono(), axis), Rational(1));
}

// q_n(t, lambda) = lambda^n P_n^{(alpha,0)}((2t - lambda)/lambda) as exact
// polynomials, via the homogenized three-term Jacobi recurrence
std::vector<PolyForm<Rational>> scaled_jacobi(int nmax, int alpha,
                                              const PolyForm<Rational>& T,
                                              const PolyForm<Rational>& L) {
  int dim = T.ambient_dim();
  std::vector<PolyForm<Rational>> q;
  q.reserve(nmax + 1);
  q.push_back(PolyForm<Rational>::constant(dim, Rational(1)));
  if (nmax == 0) return q;
  {
    PolyForm<Rational> q1 = T;
    q1 *= Rational(alpha + 2);
    q1 -= L;
    q.push_back(q1);
  }
  PolyForm<Rational> two_t_minus_l = T;
  two_t_minus_l *= Rational(2);
  two_t_minus_l -= L;
  PolyForm<Rational> l_sq = wedge(L, L);
  for (int n = 2; n <= nmax; ++n) {
    Rational c0 = Rational(2) * n * (n + alpha) * (2 * n + alpha - 2);
    Rational c1 = Rational(2 * n + alpha - 1) * (2 * n + alpha) * (2 * n + alpha - 2);
    Rational c1l = Rational(2 * n + alpha - 1) * alpha * alpha;
    Rational c2 = Rational(2) * (n + alpha - 1) * (n - 1) * (2 * n + alpha);
    PolyForm<Rational> mid = two_t_minus_l;
    mid *= c1;
    PolyForm<Rational> lterm = L;
    lterm *= c1l;
    mid += lterm;
    PolyForm<Rational> next = wedge(mid, q[n - 1]);
    PolyForm<Rational> tail = wedge(l_sq, q[n - 2]);
    tail *= c2;
    next -= tail;
    next *= Rational(1) / c0;
    q.push_back(next);
  }
  return q;
}

// numeric twin of scaled_jacobi for stable point evaluation
void scaled_jacobi_values(int nmax, int alpha, double t, double l, std::vector<double>& q) {
  q.assign(nmax + 1, 0.0);
  q[0] = 1.0;
  if (nmax == 0) return;
  q[1] = (alpha + 2) * t - l;
  for (int n = 2; n <= nmax; ++n) {
    double c0 = 2.0 * n * (n + alpha) * (2 * n + alpha - 2);
    double c1 = double(2 * n + alpha - 1) * (2 * n + alpha) * (2 * n + alpha - 2);
    double c1l = double(2 * n + alpha - 1) * alpha * alpha;
    double c2 = 2.0 * (n + alpha - 1) * (n - 1) * (2 * n + alpha);
    q[n] = ((c1 * (2 * t - l) + c1l * l) * q[n - 1] - c2 * l * l * q[n - 2]) / c0;
  }
}

OrthoScalarBasis build_basis(CellKind kind, int dim, int maxdeg) {
  OrthoScalarBasis B;
  B.kind = kind;
  B.dim = dim;
  B.maxdeg = maxdeg;
  B.mono_order = kind == CellKind::Simplex ? monomials_up_to(dim, maxdeg)
                                           : box_monomials(dim, maxdeg);
  B.index = B.mono_order;

  if (kind == CellKind::Box) {
    // per-axis shifted Legendre products
    std::vector<std::vector<PolyForm<Rational>>> leg(dim);
    for (int a = 0; a < dim; ++a)
      leg[a] = scaled_jacobi(maxdeg, 0, coordinate(dim, a),
                             PolyForm<Rational>::constant(dim, Rational(1)));
    for (const Mono& e : B.index) {
      PolyForm<Rational> p = leg[0][e[0]];
      for (int a = 1; a < dim; ++a) p = wedge(p, leg[a][e[a]]);
      B.polys.push_back(std::move(p));
    }
  } else if (dim == 1) {
    auto leg = scaled_jacobi(maxdeg, 0, coordinate(1, 0),
                             PolyForm<Rational>::constant(1, Rational(1)));
    for (const Mono& e : B.index) B.polys.push_back(leg[e[0]]);
  } else if (dim == 2) {
    PolyForm<Rational> lam = PolyForm<Rational>::constant(2, Rational(1));
    lam -= coordinate(2, 1);
    auto qx = scaled_jacobi(maxdeg, 0, coordinate(2, 0), lam);
    std::map<int, std::vector<PolyForm<Rational>>> qy;
    for (const Mono& e : B.index) {
      int n = e[0], m = e[1];
      auto it = qy.find(n);
      if (it == qy.end())
        it = qy.emplace(n, scaled_jacobi(maxdeg - n, 2 * n + 1, coordinate(2, 1),
                                         PolyForm<Rational>::constant(2, Rational(1))))
                 .first;
      B.polys.push_back(wedge(qx[n], it->second[m]));
    }
  } else {
    PolyForm<Rational> one = PolyForm<Rational>::constant(3, Rational(1));
    PolyForm<Rational> lam_yz = one;
    lam_yz -= coordinate(3, 1);
    lam_yz -= coordinate(3, 2);
    PolyForm<Rational> lam_z = one;
    lam_z -= coordinate(3, 2);
    auto qx = scaled_jacobi(maxdeg, 0, coordinate(3, 0), lam_yz);
    std::map<int, std::vector<PolyForm<Rational>>> qy;
    std::map<std::pair<int, int>, std::vector<PolyForm<Rational>>> qz;
    for (const Mono& e : B.index) {
      int n = e[0], m = e[1], l = e[2];
      auto ity = qy.find(n);
      if (ity == qy.end())
        ity = qy.emplace(n, scaled_jacobi(maxdeg - n, 2 * n + 1, coordinate(3, 1), lam_z)).first;
      auto itz = qz.find({n, m});
      if (itz == qz.end())
        itz = qz.emplace(std::pair<int, int>{n, m},
                         scaled_jacobi(maxdeg - n - m, 2 * n + 2 * m + 2, coordinate(3, 2), one))
                  .first;
      B.polys.push_back(wedge(wedge(qx[n], ity->second[m]), itz->second[l]));
    }
  }

  // exact orthogonality certificate and norms
  int n = B.size();
  CellGeom<Rational> ref = reference_cell<Rational>(kind, dim);
  B.norms2 = RatVec(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j)
      if (l2_inner(B.polys[i], B.polys[j], ref) != 0)
        throw std::logic_error("ortho_basis: construction lost orthogonality");
    B.norms2(i) = l2_inner(B.polys[i], B.polys[i], ref);
    if (!(B.norms2(i) > 0)) throw std::logic_error("ortho_basis: degenerate basis member");
  }

  // monomial coordinate transforms
  B.to_mono = RatMat::Zero(n, n);
  std::map<Mono, int> pos;
  for (int j = 0; j < n; ++j) pos.emplace(B.mono_order[j], j);
  for (int i = 0; i < n; ++i)
    for (const auto& [key, c] : B.polys[i].terms()) B.to_mono(i, pos.at(key.exp)) = c;
  B.from_mono = rat_inverse(B.to_mono.transpose());
  return B;
}

}  // namespace

int OrthoScalarBasis::mono_position(const Mono& e) const {
  for (std::size_t j = 0; j < mono_order.size(); ++j)
    if (mono_order[j] == e) return static_cast<int>(j);
  return -1;
}

RatVec OrthoScalarBasis::mono_coords(const PolyForm<Rational>& f, std::uint8_t mask) const {
  RatVec v = RatVec::Zero(size());
  auto c = f.comp(mask);
  for (const auto& [key, coeff] : c.terms()) {
    int j = mono_position(key.exp);
    if (j < 0) throw std::invalid_argument("mono_coords: degree exceeds basis");
    v(j) = coeff;
  }
  return v;
}

VecX<double> OrthoScalarBasis::eval_all(const VecX<double>& x) const {
  VecX<double> out(size());
  std::vector<double> qx, qaux;
  if (kind == CellKind::Box) {
    std::vector<std::vector<double>> leg(dim);
    for (int a = 0; a < dim; ++a) scaled_jacobi_values(maxdeg, 0, x(a), 1.0, leg[a]);
    for (int i = 0; i < size(); ++i) {
      double v = leg[0][index[i][0]];
      for (int a = 1; a < dim; ++a) v *= leg[a][index[i][a]];
      out(i) = v;
    }
  } else if (dim == 1) {
    scaled_jacobi_values(maxdeg, 0, x(0), 1.0, qx);
    for (int i = 0; i < size(); ++i) out(i) = qx[index[i][0]];
  } else if (dim == 2) {
    scaled_jacobi_values(maxdeg, 0, x(0), 1.0 - x(1), qx);
    std::map<int, std::vector<double>> qy;
    for (int i = 0; i < size(); ++i) {
      int n = index[i][0], m = index[i][1];
      auto it = qy.find(n);
      if (it == qy.end()) {
        std::vector<double> vals;
        scaled_jacobi_values(maxdeg - n, 2 * n + 1, x(1), 1.0, vals);
        it = qy.emplace(n, std::move(vals)).first;
      }
      out(i) = qx[n] * it->second[m];
    }
  } else {
    scaled_jacobi_values(maxdeg, 0, x(0), 1.0 - x(1) - x(2), qx);
    std::map<int, std::vector<double>> qy;
    std::map<std::pair<int, int>, std::vector<double>> qz;
    for (int i = 0; i < size(); ++i) {
      int n = index[i][0], m = index[i][1], l = index[i][2];
      auto ity = qy.find(n);
      if (ity == qy.end()) {
        std::vector<double> vals;
        scaled_jacobi_values(maxdeg - n, 2 * n + 1, x(1), 1.0 - x(2), vals);
        ity = qy.emplace(n, std::move(vals)).first;
      }
      auto itz = qz.find({n, m});
      if (itz == qz.end()) {
        std::vector<double> vals;
        scaled_jacobi_values(maxdeg - n - m, 2 * n + 2 * m + 2, x(2), 1.0, vals);
        itz = qz.emplace(std::pair<int, int>{n, m}, std::move(vals)).first;
      }
      out(i) = qx[n] * ity->second[m] * itz->second[l];
    }
  }
  return out;
}

const OrthoScalarBasis& ortho_basis(CellKind kind, int dim, int maxdeg) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, OrthoScalarBasis> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(static_cast<int>(kind), dim, maxdeg);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_basis(kind, dim, maxdeg)).first;
  return it->second;
}

}  // namespace pfec
