#pragma once

// Monomial exponents (ambient dimension <= 3) and basis index tuples.
// A strictly increasing tuple of axes is stored as a bitmask; sign
// bookkeeping for wedge/contraction lives here.

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace pfec {

using Mono = std::array<std::uint8_t, 3>;  // unused axes stay 0

inline constexpr Mono zero_mono() { return {0, 0, 0}; }

inline int total_degree(const Mono& m) { return m[0] + m[1] + m[2]; }

inline Mono mono_add(Mono a, const Mono& b) {
  for (int i = 0; i < 3; ++i) a[i] = static_cast<std::uint8_t>(a[i] + b[i]);
  return a;
}

inline Mono mono_bump(Mono a, int axis, int by = 1) {
  a[axis] = static_cast<std::uint8_t>(a[axis] + by);
  return a;
}

// All exponent tuples over `dim` axes with total degree <= deg, graded
// lexicographic order; deterministic enumeration used everywhere.
inline std::vector<Mono> monomials_up_to(int dim, int deg) {
  std::vector<Mono> out;
  for (int q = 0; q <= deg; ++q) {
    if (dim == 0) {
      if (q == 0) out.push_back(zero_mono());
    } else if (dim == 1) {
      out.push_back({static_cast<std::uint8_t>(q), 0, 0});
    } else if (dim == 2) {
      for (int a = q; a >= 0; --a)
        out.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(q - a), 0});
    } else {
      for (int a = q; a >= 0; --a)
        for (int b = q - a; b >= 0; --b)
          out.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                         static_cast<std::uint8_t>(q - a - b)});
    }
  }
  return out;
}

inline int popcount(std::uint8_t mask) { return std::popcount(static_cast<unsigned>(mask)); }

// sign of dx_A ^ dx_B for disjoint sorted tuples A, B (number of
// transpositions to merge-sort the concatenation)
inline int merge_sign(std::uint8_t a, std::uint8_t b) {
  int inv = 0;
  for (int j = 0; j < 8; ++j)
    if (b & (1u << j)) inv += std::popcount(static_cast<unsigned>(a) >> (j + 1));
  return (inv % 2 == 0) ? 1 : -1;
}

// sign of dx_i ^ dx_I relative to dx_{I u {i}}
inline int insert_sign(std::uint8_t mask, int i) {
  int below = std::popcount(static_cast<unsigned>(mask) & ((1u << i) - 1u));
  return (below % 2 == 0) ? 1 : -1;
}

// sign picked up by x_i .| dx_I (position of i within sorted I)
inline int remove_sign(std::uint8_t mask, int i) { return insert_sign(mask, i); }

inline std::vector<int> mask_axes(std::uint8_t mask) {
  std::vector<int> v;
  for (int i = 0; i < 8; ++i)
    if (mask & (1u << i)) v.push_back(i);
  return v;
}

// all popcount-l masks over `dim` axes, increasing numeric order
// tensor monomials with a per-axis degree cap, axis 0 fastest
inline std::vector<Mono> box_monomials(int dim, int cap) {
  std::vector<Mono> out;
  int nz = dim >= 3 ? cap : 0, ny = dim >= 2 ? cap : 0;
  for (int c = 0; c <= nz; ++c)
    for (int b = 0; b <= ny; ++b)
      for (int a = 0; a <= cap; ++a)
        out.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                       static_cast<std::uint8_t>(c)});
  return out;
}

inline std::vector<std::uint8_t> masks_of_degree(int dim, int l) {
  std::vector<std::uint8_t> v;
  for (unsigned m = 0; m < (1u << dim); ++m)
    if (std::popcount(m) == l) v.push_back(static_cast<std::uint8_t>(m));
  return v;
}

struct TermKey {
  std::uint8_t mask;
  Mono exp;
  auto operator<=>(const TermKey&) const = default;
};

}  // namespace pfec
