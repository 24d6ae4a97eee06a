#pragma once

// Exactly orthogonal scalar polynomial bases on the reference cells, with
// rational coefficients, exact norms, and numerically stable point
// evaluation through recurrences.  These bases anchor every conditioning-
// sensitive computation; the monomial representation stays the public
// interchange format.

#include <vector>

#include "pfec/integration.hpp"
#include "pfec/polyform.hpp"

namespace pfec {

struct OrthoScalarBasis {
  CellKind kind = CellKind::Simplex;
  int dim = 0;
  int maxdeg = 0;  // total degree on a simplex, per-axis cap on a box

  std::vector<Mono> index;                // recurrence index tuple per entry
  std::vector<PolyForm<Rational>> polys;  // pairwise orthogonal on the reference cell
  RatVec norms2;                          // exact squared L2 norms

  std::vector<Mono> mono_order;  // monomial enumeration backing the coords
  RatMat to_mono;                // row i: polys[i] over mono_order
  RatMat from_mono;              // inverse transpose: monomial coeffs -> ortho coords

  int size() const { return static_cast<int>(polys.size()); }
  int mono_position(const Mono& e) const;

  // coefficient vector of one component of a form over mono_order
  RatVec mono_coords(const PolyForm<Rational>& f, std::uint8_t mask) const;
  RatVec ortho_coords(const PolyForm<Rational>& f, std::uint8_t mask) const {
    return from_mono * mono_coords(f, mask);
  }
  // exact inner product of two coefficient vectors in ortho coords
  Rational dot(const RatVec& a, const RatVec& b) const {
    Rational s = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i) * norms2(i);
    return s;
  }

  // stable values of every basis polynomial at a reference point
  VecX<double> eval_all(const VecX<double>& x) const;
};

// process-wide cache; references stay valid for the program lifetime
const OrthoScalarBasis& ortho_basis(CellKind kind, int dim, int maxdeg);

}  // namespace pfec
