#pragma once

// Exact rational linear algebra on Eigen matrices: rank certificates,
// span membership, nullspaces, LDL^T.  Pivot order is deterministic
// (columns left to right, first usable row), never magnitude-based.

#include <vector>

#include "pfec/scalar.hpp"

namespace pfec {

// Incremental row space in echelon form; rows keep strictly increasing
// leading columns, so membership and rank queries are exact and cheap.
class RowSpan {
 public:
  explicit RowSpan(Eigen::Index cols) : cols_(cols) {}

  int rank() const { return static_cast<int>(rows_.size()); }
  Eigen::Index cols() const { return cols_; }

  // reduce v against the stored rows; returns the residual
  RatVec reduce(RatVec v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& piv = v(lead_[r]);
      if (piv != 0) {
        Rational f = piv / rows_[r](lead_[r]);
        v -= f * rows_[r];
        v(lead_[r]) = 0;  // kill rounding-free but explicit
      }
    }
    return v;
  }

  bool contains(const RatVec& v) const {
    RatVec r = reduce(v);
    for (Eigen::Index i = 0; i < r.size(); ++i)
      if (r(i) != 0) return false;
    return true;
  }

  // insert if independent; returns true when the vector enlarged the span
  bool insert(const RatVec& v) {
    RatVec r = reduce(v);
    Eigen::Index lead = -1;
    for (Eigen::Index i = 0; i < r.size(); ++i)
      if (r(i) != 0) { lead = i; break; }
    if (lead < 0) return false;
    // keep echelon ordering by leading column
    std::size_t pos = 0;
    while (pos < rows_.size() && lead_[pos] < lead) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(r));
    lead_.insert(lead_.begin() + pos, lead);
    return true;
  }

 private:
  Eigen::Index cols_;
  std::vector<RatVec> rows_;
  std::vector<Eigen::Index> lead_;
};

inline int rat_rank(const RatMat& M) {
  RowSpan s(M.cols());
  for (Eigen::Index i = 0; i < M.rows(); ++i) s.insert(M.row(i).transpose());
  return s.rank();
}

// indices of the deterministic independent row subset (first-come pivoting)
inline std::vector<int> independent_rows(const RatMat& M) {
  RowSpan s(M.cols());
  std::vector<int> keep;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    if (s.insert(M.row(i).transpose())) keep.push_back(static_cast<int>(i));
  return keep;
}

// exact kernel basis of M (columns of the result), canonical RREF construction
inline RatMat rat_nullspace(const RatMat& M) {
  Eigen::Index rows = M.rows(), cols = M.cols();
  RatMat R = M;
  std::vector<Eigen::Index> pivot_col;
  Eigen::Index pr = 0;
  for (Eigen::Index c = 0; c < cols && pr < rows; ++c) {
    Eigen::Index sel = -1;
    for (Eigen::Index r = pr; r < rows; ++r)
      if (R(r, c) != 0) { sel = r; break; }
    if (sel < 0) continue;
    R.row(sel).swap(R.row(pr));
    R.row(pr) /= R(pr, c);
    for (Eigen::Index r = 0; r < rows; ++r)
      if (r != pr && R(r, c) != 0) R.row(r) -= R(r, c) * R.row(pr);
    pivot_col.push_back(c);
    ++pr;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  RatMat N = RatMat::Zero(cols, static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    N(free_cols[j], static_cast<Eigen::Index>(j)) = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
      N(pivot_col[r], static_cast<Eigen::Index>(j)) = -R(static_cast<Eigen::Index>(r), free_cols[j]);
  }
  return N;
}

// exact solve of A x = b for square nonsingular A (deterministic pivoting)
inline RatVec rat_solve(RatMat A, RatVec b) {
  Eigen::Index n = A.rows();
  if (A.cols() != n || b.size() != n) throw std::invalid_argument("rat_solve: shape mismatch");
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index sel = -1;
    for (Eigen::Index r = c; r < n; ++r)
      if (A(r, c) != 0) { sel = r; break; }
    if (sel < 0) throw std::invalid_argument("rat_solve: singular matrix");
    A.row(sel).swap(A.row(c));
    std::swap(b(sel), b(c));
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (A(r, c) == 0) continue;
      Rational f = A(r, c) / A(c, c);
      A.row(r) -= f * A.row(c);
      b(r) -= f * b(c);
    }
  }
  RatVec x = RatVec::Zero(n);
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    Rational s = b(r);
    for (Eigen::Index c = r + 1; c < n; ++c) s -= A(r, c) * x(c);
    x(r) = s / A(r, r);
  }
  return x;
}

inline RatMat rat_inverse(const RatMat& A) {
  Eigen::Index n = A.rows();
  RatMat inv(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    RatVec e = RatVec::Zero(n);
    e(j) = 1;
    inv.col(j) = rat_solve(A, e);
  }
  return inv;
}

// exact LDL^T of a symmetric positive definite matrix (no pivoting; PD by
// construction wherever this is used: Gram matrices of independent sets)
struct RatLDLT {
  RatMat L;  // unit lower triangular
  RatVec D;  // positive diagonal
};

inline RatLDLT rat_ldlt(const RatMat& G) {
  Eigen::Index n = G.rows();
  RatLDLT f;
  f.L = RatMat::Identity(n, n);
  f.D = RatVec::Zero(n);
  RatMat W = G;
  for (Eigen::Index j = 0; j < n; ++j) {
    f.D(j) = W(j, j);
    if (!(f.D(j) > 0)) throw std::runtime_error("rat_ldlt: matrix not positive definite");
    for (Eigen::Index i = j + 1; i < n; ++i) f.L(i, j) = W(i, j) / f.D(j);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      if (W(i, j) == 0) continue;
      for (Eigen::Index k = j + 1; k <= i; ++k) W(i, k) -= f.L(i, j) * W(k, j);
    }
    for (Eigen::Index i = j + 1; i < n; ++i) W(i, j) = 0;
  }
  return f;
}

// solve with a consistent, possibly rectangular system: columns of B span a
// space containing v, expressed as B x = v with B full column rank
inline RatVec rat_represent(const RatMat& B, const RatVec& v) {
  // normal equations are exact here: B^T B is PD for full column rank
  RatMat G = B.transpose() * B;
  RatVec rhs = B.transpose() * v;
  return rat_solve(std::move(G), std::move(rhs));
}

}  // namespace pfec
