#include "pfec/mesh.hpp"

#include "pfec/rational_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace pfec {
namespace {

std::vector<int> sorted_ids(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// all k-subsets of {0..n-1} in lexicographic order
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    out.push_back(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (k == 0) out = {{}};
  return out;
}

std::vector<Rational> column_key(const RatMat& verts, int i) {
  std::vector<Rational> key(verts.rows());
  for (Eigen::Index r = 0; r < verts.rows(); ++r) key[r] = verts(r, i);
  return key;
}

// vertex ids of one m-subfacet of a box given its binary-ordered vertex list:
// axes in `axes` stay free, the rest are pinned to the bits of `fixed`
std::vector<int> box_subfacet(const std::vector<int>& chart_order, int mdim,
                              const std::vector<int>& axes, int fixed) {
  int m = static_cast<int>(axes.size());
  std::vector<bool> is_free(mdim, false);
  for (int a : axes) is_free[a] = true;
  std::vector<int> out(std::size_t(1) << m);
  for (int b = 0; b < (1 << m); ++b) {
    int idx = 0, fb = 0;
    for (int a = 0, k = 0; a < mdim; ++a) {
      if (is_free[a]) {
        if (b & (1 << k)) idx |= 1 << a;
        ++k;
      } else {
        if (fixed & (1 << fb)) idx |= 1 << a;
        ++fb;
      }
    }
    out[b] = chart_order[idx];
  }
  return out;
}

// m-subfacet id lists of a facet/cell in a deterministic order
std::vector<std::vector<int>> enumerate_subfacets(CellKind kind,
                                                  const std::vector<int>& chart_order,
                                                  int mdim, int msub) {
  std::vector<std::vector<int>> out;
  if (kind == CellKind::Simplex) {
    for (const auto& pick : subsets(mdim + 1, msub + 1)) {
      std::vector<int> ids(pick.size());
      for (std::size_t i = 0; i < pick.size(); ++i) ids[i] = chart_order[pick[i]];
      out.push_back(std::move(ids));
    }
  } else {
    for (const auto& axes : subsets(mdim, msub))
      for (int fixed = 0; fixed < (1 << (mdim - msub)); ++fixed)
        out.push_back(box_subfacet(chart_order, mdim, axes, fixed));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// construction and validation

Mesh Mesh::build(int d, CellKind kind, RatMat verts,
                 std::vector<std::vector<int>> cells) {
  if (d < 1 || d > 3) throw std::runtime_error("mesh: dimension must be 1, 2 or 3");
  Mesh m;
  m.d_ = d;
  m.kind_ = kind;
  m.verts_ = std::move(verts);
  m.cells_ = std::move(cells);
  m.validate_cells();
  m.build_facets();
  m.mark_boundary();
  m.check_conformity();
  return m;
}

void Mesh::validate_cells() const {
  int nv = num_vertices();
  std::size_t want = kind_ == CellKind::Simplex ? std::size_t(d_) + 1
                                                : std::size_t(1) << d_;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto& cell = cells_[c];
    if (cell.size() != want)
      throw std::runtime_error("mesh: cell " + std::to_string(c) + " has wrong vertex count");
    for (int v : cell)
      if (v < 0 || v >= nv)
        throw std::runtime_error("mesh: cell " + std::to_string(c) + " has vertex id out of range");
    auto s = sorted_ids(cell);
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::runtime_error("mesh: cell " + std::to_string(c) + " repeats a vertex");

    // reference map must be affine, orientation preserving, nondegenerate
    RatMat A(d_, d_);
    RatVec v0 = verts_.col(cell[0]);
    if (kind_ == CellKind::Simplex) {
      for (int k = 0; k < d_; ++k) A.col(k) = verts_.col(cell[k + 1]) - v0;
    } else {
      for (int k = 0; k < d_; ++k) A.col(k) = verts_.col(cell[std::size_t(1) << k]) - v0;
      for (std::size_t b = 0; b < want; ++b) {
        RatVec x = v0;
        for (int k = 0; k < d_; ++k)
          if (b & (std::size_t(1) << k)) x += A.col(k);
        if (verts_.col(cell[b]) != x)
          throw std::runtime_error("mesh: cell " + std::to_string(c) +
                                   " is not an affine cube image");
      }
    }
    AffineMap<Rational> map{A, v0};
    if (!(affine_det(map) > 0))
      throw std::runtime_error("mesh: cell " + std::to_string(c) + " is inverted or degenerate");

    // star-shape via convexity: all vertices weakly on one side of each
    // facet hyperplane
    auto walls = enumerate_subfacets(kind_, cell, d_, d_ - 1);
    for (const auto& w : walls) {
      RatVec a = verts_.col(w[0]);
      RatVec n(d_);
      if (d_ == 2) {
        RatVec e = verts_.col(w[1]) - a;
        n(0) = -e(1);
        n(1) = e(0);
      } else {
        RatVec e1 = verts_.col(w[1]) - a;
        RatVec e2 = verts_.col(w[2]) - a;
        n(0) = e1(1) * e2(2) - e1(2) * e2(1);
        n(1) = e1(2) * e2(0) - e1(0) * e2(2);
        n(2) = e1(0) * e2(1) - e1(1) * e2(0);
      }
      if (n.isZero())
        throw std::runtime_error("mesh: cell " + std::to_string(c) + " has a degenerate facet");
      int pos = 0, neg = 0;
      for (int v : cell) {
        Rational s = n.dot(verts_.col(v) - a);
        if (s > 0) ++pos;
        if (s < 0) ++neg;
      }
      if (pos > 0 && neg > 0)
        throw std::runtime_error("mesh: cell " + std::to_string(c) + " is not convex");
    }
  }
}

void Mesh::build_facets() {
  facets_.assign(d_ + 1, {});
  index_.assign(d_ + 1, {});
  cell_subfacets_.assign(cells_.size(), std::vector<std::vector<int>>(d_ + 1));

  for (int c = 0; c < num_cells(); ++c) {
    for (int m = 0; m <= d_; ++m) {
      for (const auto& ids : enumerate_subfacets(kind_, cells_[c], d_, m)) {
        auto key = sorted_ids(ids);
        auto it = index_[m].find(key);
        int fi;
        if (it != index_[m].end()) {
          fi = it->second;
        } else {
          fi = static_cast<int>(facets_[m].size());
          index_[m].emplace(key, fi);
          Facet f;
          f.m = m;
          f.kind = kind_;
          f.key = key;
          if (m == d_) {
            // cells keep their own ordering and map
            f.chart_order = cells_[c];
          } else if (m == 0 || kind_ == CellKind::Simplex) {
            f.chart_order = key;
          } else {
            f.chart_order = box_chart_order(key);
          }
          f.chart = chart_from_order(f.chart_order, m);
          facets_[m].push_back(std::move(f));
        }
        Facet& f = facets_[m][fi];
        if (f.cells.empty() || f.cells.back() != c) f.cells.push_back(c);
        cell_subfacets_[c][m].push_back(fi);
      }
    }
  }
}

void Mesh::mark_boundary() {
  for (auto& f : facets_[d_ - 1]) f.boundary = f.cells.size() == 1;
  for (const auto& f : facets_[d_ - 1]) {
    if (!f.boundary) continue;
    for (int m = 0; m < d_ - 1; ++m)
      for (const auto& ids : enumerate_subfacets(f.kind, f.chart_order, d_ - 1, m))
        facets_[m][facet_index(m, sorted_ids(ids))].boundary = true;
  }
}

void Mesh::check_conformity() const {
  // exact duplicate vertex coordinates
  std::map<std::vector<Rational>, int> seen;
  for (int i = 0; i < num_vertices(); ++i)
    if (!seen.emplace(column_key(verts_, i), i).second)
      throw std::runtime_error("nonconforming mesh: duplicate vertex coordinates");

  // duplicate cells
  std::map<std::vector<int>, int> cellset;
  for (int c = 0; c < num_cells(); ++c)
    if (!cellset.emplace(sorted_ids(cells_[c]), c).second)
      throw std::runtime_error("nonconforming mesh: duplicate cell");

  for (const auto& f : facets_[d_ - 1])
    if (f.cells.size() > 2)
      throw std::runtime_error("nonconforming mesh: facet shared by more than two cells");

  // geometric and pairwise checks are quadratic, so skip them on large
  // meshes whose cells come from validated uniform refinement
  if (num_cells() > 4096) return;

  // no vertex may lie inside or on a cell it is not a vertex of: catches
  // hanging nodes that are invisible to the combinatorial checks
  for (int c = 0; c < num_cells(); ++c) {
    const auto& cell = cells_[c];
    auto walls = enumerate_subfacets(kind_, cell, d_, d_ - 1);
    RatVec centroid = RatVec::Zero(d_);
    for (int v : cell) centroid += verts_.col(v);
    centroid /= Rational(static_cast<int>(cell.size()));
    for (int v = 0; v < num_vertices(); ++v) {
      if (std::find(cell.begin(), cell.end(), v) != cell.end()) continue;
      bool inside = true;
      for (const auto& w : walls) {
        RatVec a = verts_.col(w[0]);
        RatVec n(d_);
        if (d_ == 2) {
          RatVec e = verts_.col(w[1]) - a;
          n(0) = -e(1);
          n(1) = e(0);
        } else {
          RatVec e1 = verts_.col(w[1]) - a;
          RatVec e2 = verts_.col(w[2]) - a;
          n(0) = e1(1) * e2(2) - e1(2) * e2(1);
          n(1) = e1(2) * e2(0) - e1(0) * e2(2);
          n(2) = e1(0) * e2(1) - e1(1) * e2(0);
        }
        Rational sc = n.dot(centroid - a);
        Rational sv = n.dot(verts_.col(v) - a);
        if ((sc > 0 && sv < 0) || (sc < 0 && sv > 0)) {
          inside = false;
          break;
        }
      }
      if (inside)
        throw std::runtime_error("nonconforming mesh: vertex " + std::to_string(v) +
                                 " lies inside cell " + std::to_string(c));
    }
  }
  std::vector<std::vector<int>> at_vertex(num_vertices());
  for (int c = 0; c < num_cells(); ++c)
    for (int v : cells_[c]) at_vertex[v].push_back(c);
  std::set<std::pair<int, int>> done;
  for (const auto& incident : at_vertex)
    for (std::size_t i = 0; i < incident.size(); ++i)
      for (std::size_t j = i + 1; j < incident.size(); ++j) {
        int c1 = incident[i], c2 = incident[j];
        if (!done.emplace(c1, c2).second) continue;
        auto s1 = sorted_ids(cells_[c1]), s2 = sorted_ids(cells_[c2]);
        std::vector<int> common;
        std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(),
                              std::back_inserter(common));
        int m = -1;
        if (kind_ == CellKind::Simplex) {
          m = static_cast<int>(common.size()) - 1;
        } else {
          for (int k = 0; k < d_; ++k)
            if (common.size() == std::size_t(1) << k) m = k;
        }
        bool ok = m >= 0 && m < d_;
        if (ok) {
          int fi = facet_index(m, common);
          const auto& sf1 = cell_subfacets_[c1][m];
          const auto& sf2 = cell_subfacets_[c2][m];
          ok = fi >= 0 &&
               std::find(sf1.begin(), sf1.end(), fi) != sf1.end() &&
               std::find(sf2.begin(), sf2.end(), fi) != sf2.end();
        }
        if (!ok)
          throw std::runtime_error("nonconforming mesh: cells " + std::to_string(c1) +
                                   " and " + std::to_string(c2) +
                                   " do not meet in a common facet");
      }
}

// ---------------------------------------------------------------------------
// charts

std::vector<int> Mesh::box_chart_order(const std::vector<int>& key) const {
  // identify the edge generators at the minimum-id corner of an affine
  // parallelotope; the first id-ascending combination that reproduces the
  // vertex set is the edge set
  int m = 0;
  while ((std::size_t(1) << m) < key.size()) ++m;
  std::map<std::vector<Rational>, int> offset_to_id;
  RatVec origin = verts_.col(key[0]);
  for (int id : key) {
    RatVec w = verts_.col(id) - origin;
    std::vector<Rational> k(w.size());
    for (Eigen::Index r = 0; r < w.size(); ++r) k[r] = w(r);
    offset_to_id.emplace(std::move(k), id);
  }
  int n = static_cast<int>(key.size());
  for (const auto& pick : subsets(n - 1, m)) {
    std::vector<RatVec> gen(m);
    for (int k = 0; k < m; ++k) gen[k] = verts_.col(key[pick[k] + 1]) - origin;
    std::vector<int> order(std::size_t(1) << m);
    bool ok = true;
    for (int b = 0; ok && b < (1 << m); ++b) {
      RatVec w = RatVec::Zero(d_);
      for (int k = 0; k < m; ++k)
        if (b & (1 << k)) w += gen[k];
      std::vector<Rational> kk(w.size());
      for (Eigen::Index r = 0; r < w.size(); ++r) kk[r] = w(r);
      auto it = offset_to_id.find(kk);
      if (it == offset_to_id.end())
        ok = false;
      else
        order[b] = it->second;
    }
    if (ok) return order;
  }
  throw std::runtime_error("mesh: facet vertex set is not an affine cube image");
}

AffineMap<Rational> Mesh::chart_from_order(const std::vector<int>& order, int m) const {
  AffineMap<Rational> chart;
  chart.b = verts_.col(order[0]);
  chart.A = RatMat(d_, m);
  if (m == 0) return chart;
  if (order.size() == std::size_t(m) + 1) {
    for (int k = 0; k < m; ++k)
      chart.A.col(k) = verts_.col(order[k + 1]) - chart.b;
  } else {
    for (int k = 0; k < m; ++k)
      chart.A.col(k) = verts_.col(order[std::size_t(1) << k]) - chart.b;
  }
  return chart;
}

CellGeom<Rational> Mesh::cell_geom(int c) const {
  CellGeom<Rational> K;
  K.kind = kind_;
  K.map = facets_[d_][cell_subfacets_[c][d_][0]].chart;
  return K;
}

CellGeom<double> Mesh::cell_geom_d(int c) const {
  CellGeom<Rational> K = cell_geom(c);
  CellGeom<double> Kd;
  Kd.kind = K.kind;
  Kd.map.A = to_double_mat(K.map.A);
  Kd.map.b = to_double_mat(K.map.b);
  return Kd;
}

int Mesh::facet_index(int m, std::vector<int> ids) const {
  auto it = index_[m].find(ids);
  return it == index_[m].end() ? -1 : it->second;
}

std::vector<int> Mesh::subfacets(int m, int f, int msub) const {
  const Facet& F = facets_[m][f];
  std::vector<int> out;
  for (const auto& ids : enumerate_subfacets(F.kind, F.chart_order, m, msub))
    out.push_back(facet_index(msub, sorted_ids(ids)));
  return out;
}

AffineMap<Rational> Mesh::inclusion(int msub, int fsub, int m, int f) const {
  const AffineMap<Rational>& big = facets_[m][f].chart;
  const AffineMap<Rational>& sub = facets_[msub][fsub].chart;
  RatMat AtA = big.A.transpose() * big.A;
  AffineMap<Rational> incl;
  incl.A = RatMat(m, msub);
  RatMat rhs = big.A.transpose() * sub.A;
  for (int j = 0; j < msub; ++j) incl.A.col(j) = rat_solve(AtA, rhs.col(j));
  incl.b = rat_solve(AtA, RatVec(big.A.transpose() * (sub.b - big.b)));
  if (big.A * incl.A != sub.A || RatVec(big.A * incl.b + big.b) != sub.b)
    throw std::runtime_error("mesh: inclusion does not factor through the facet chart");
  return incl;
}

// ---------------------------------------------------------------------------
// star-shaped center box

void Mesh::star_center_box(int c, RatVec& center, RatVec& halfwidth) const {
  const auto& cell = cells_[c];
  center = RatVec::Zero(d_);
  for (int v : cell) center += verts_.col(v);
  center /= Rational(static_cast<int>(cell.size()));

  double dist = std::numeric_limits<double>::infinity();
  for (const auto& w : enumerate_subfacets(kind_, cell, d_, d_ - 1)) {
    RatVec a = verts_.col(w[0]);
    VecX<double> n(d_);
    if (d_ == 2) {
      VecX<double> e = to_double_mat(RatVec(verts_.col(w[1]) - a));
      n << -e(1), e(0);
    } else {
      VecX<double> e1 = to_double_mat(RatVec(verts_.col(w[1]) - a));
      VecX<double> e2 = to_double_mat(RatVec(verts_.col(w[2]) - a));
      n = Eigen::Vector3d(e1).cross(Eigen::Vector3d(e2));
    }
    VecX<double> dc = to_double_mat(RatVec(center - a));
    dist = std::min(dist, std::abs(n.dot(dc)) / n.norm());
  }
  // quarter of the centroid-to-boundary distance, rounded down to a dyadic
  // rational so the box stays exactly representable and strictly inside
  double h = dist / 4.0;
  long long grid = static_cast<long long>(std::floor(h * 1048576.0));
  if (grid <= 0) throw std::runtime_error("mesh: cell too small for a center box");
  Rational hr = Rational(grid) / 1048576;
  halfwidth = RatVec::Constant(d_, hr);

  // exact containment: every box corner weakly inside every facet halfspace
  for (const auto& w : enumerate_subfacets(kind_, cell, d_, d_ - 1)) {
    RatVec a = verts_.col(w[0]);
    RatVec n(d_);
    if (d_ == 2) {
      RatVec e = verts_.col(w[1]) - a;
      n(0) = -e(1);
      n(1) = e(0);
    } else {
      RatVec e1 = verts_.col(w[1]) - a;
      RatVec e2 = verts_.col(w[2]) - a;
      n(0) = e1(1) * e2(2) - e1(2) * e2(1);
      n(1) = e1(2) * e2(0) - e1(0) * e2(2);
      n(2) = e1(0) * e2(1) - e1(1) * e2(0);
    }
    Rational sc = n.dot(center - a);
    for (int b = 0; b < (1 << d_); ++b) {
      RatVec corner = center;
      for (int k = 0; k < d_; ++k) corner(k) += (b & (1 << k)) ? hr : -hr;
      Rational s = n.dot(corner - a);
      if ((sc > 0 && s < 0) || (sc < 0 && s > 0))
        throw std::runtime_error("mesh: center box escapes its cell");
    }
  }
}

// ---------------------------------------------------------------------------
// refinement

Mesh Mesh::refined() const {
  RatMat verts = verts_;
  std::map<std::vector<int>, int> midpoint;  // sorted generating ids -> new id
  auto point_id = [&](std::vector<int> gen) {
    auto key = sorted_ids(gen);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    RatVec x = RatVec::Zero(d_);
    for (int v : key) x += verts_.col(v);
    x /= Rational(static_cast<int>(key.size()));
    int id = static_cast<int>(verts.cols());
    verts.conservativeResize(Eigen::NoChange, verts.cols() + 1);
    verts.col(id) = x;
    midpoint.emplace(std::move(key), id);
    return id;
  };

  std::vector<std::vector<int>> cells;
  auto push_oriented = [&](std::vector<int> cell) {
    // simplex children may come out mirrored; swapping the last two vertices
    // restores positive orientation without touching facet identities
    if (kind_ == CellKind::Simplex) {
      RatMat A(d_, d_);
      for (int k = 0; k < d_; ++k)
        A.col(k) = verts.col(cell[k + 1]) - verts.col(cell[0]);
      AffineMap<Rational> map{A, verts.col(cell[0])};
      if (affine_det(map) < 0) std::swap(cell[cell.size() - 1], cell[cell.size() - 2]);
    }
    cells.push_back(std::move(cell));
  };

  for (int c = 0; c < num_cells(); ++c) {
    const auto& v = cells_[c];
    if (kind_ == CellKind::Simplex && d_ == 2) {
      int m01 = point_id({v[0], v[1]}), m02 = point_id({v[0], v[2]}),
          m12 = point_id({v[1], v[2]});
      push_oriented({v[0], m01, m02});
      push_oriented({m01, v[1], m12});
      push_oriented({m02, m12, v[2]});
      push_oriented({m01, m12, m02});
    } else if (kind_ == CellKind::Simplex && d_ == 3) {
      int m01 = point_id({v[0], v[1]}), m02 = point_id({v[0], v[2]}),
          m03 = point_id({v[0], v[3]}), m12 = point_id({v[1], v[2]}),
          m13 = point_id({v[1], v[3]}), m23 = point_id({v[2], v[3]});
      push_oriented({v[0], m01, m02, m03});
      push_oriented({m01, v[1], m12, m13});
      push_oriented({m02, m12, v[2], m23});
      push_oriented({m03, m13, m23, v[3]});
      // octahedron cut along the (m02, m13) diagonal
      push_oriented({m02, m13, m01, m03});
      push_oriented({m02, m13, m03, m23});
      push_oriented({m02, m13, m23, m12});
      push_oriented({m02, m13, m12, m01});
    } else if (d_ == 2) {
      int g[3][3];
      g[0][0] = v[0]; g[2][0] = v[1]; g[0][2] = v[2]; g[2][2] = v[3];
      g[1][0] = point_id({v[0], v[1]});
      g[0][1] = point_id({v[0], v[2]});
      g[2][1] = point_id({v[1], v[3]});
      g[1][2] = point_id({v[2], v[3]});
      g[1][1] = point_id({v[0], v[1], v[2], v[3]});
      for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i)
          push_oriented({g[i][j], g[i + 1][j], g[i][j + 1], g[i + 1][j + 1]});
    } else {
      int g[3][3][3];
      auto corner = [&](int i, int j, int k) { return v[(i ? 1 : 0) | (j ? 2 : 0) | (k ? 4 : 0)]; };
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
          for (int i = 0; i < 3; ++i) {
            std::vector<int> gen;
            for (int ck = (k == 2 ? 1 : 0); ck <= (k ? 1 : 0); ++ck)
              for (int cj = (j == 2 ? 1 : 0); cj <= (j ? 1 : 0); ++cj)
                for (int ci = (i == 2 ? 1 : 0); ci <= (i ? 1 : 0); ++ci)
                  gen.push_back(corner(ci, cj, ck));
            g[i][j][k] = gen.size() == 1 ? gen[0] : point_id(gen);
          }
      for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
          for (int i = 0; i < 2; ++i)
            push_oriented({g[i][j][k], g[i + 1][j][k], g[i][j + 1][k], g[i + 1][j + 1][k],
                           g[i][j][k + 1], g[i + 1][j][k + 1], g[i][j + 1][k + 1],
                           g[i + 1][j + 1][k + 1]});
    }
  }
  return build(d_, kind_, std::move(verts), std::move(cells));
}

int Mesh::euler_characteristic() const {
  int chi = 0;
  for (int m = 0; m <= d_; ++m)
    chi += (m % 2 == 0 ? 1 : -1) * num_facets(m);
  return chi;
}

// ---------------------------------------------------------------------------
// builtins and parsing

Mesh Mesh::builtin(const std::string& name, int refine) {
  if (refine < 0 || refine > 5)
    throw std::runtime_error("mesh: refinement level must be between 0 and 5");
  Mesh m;
  if (name == "square-tri") {
    RatMat V(2, 4);
    V << 0, 1, 1, 0,
         0, 0, 1, 1;
    m = build(2, CellKind::Simplex, V, {{0, 1, 2}, {0, 2, 3}});
  } else if (name == "square-quad") {
    RatMat V(2, 4);
    V << 0, 1, 1, 0,
         0, 0, 1, 1;
    m = build(2, CellKind::Box, V, {{0, 1, 3, 2}});
  } else if (name == "cube-tet") {
    RatMat V(3, 8);
    for (int b = 0; b < 8; ++b) {
      V(0, b) = b & 1;
      V(1, b) = (b >> 1) & 1;
      V(2, b) = (b >> 2) & 1;
    }
    // one tetrahedron per monotone lattice path from corner 0 to corner 7
    std::vector<std::vector<int>> cells;
    int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (auto& p : perms) {
      int a = 1 << p[0], b = a | (1 << p[1]);
      std::vector<int> t{0, a, b, 7};
      RatMat A(3, 3);
      for (int k = 0; k < 3; ++k) A.col(k) = V.col(t[k + 1]) - V.col(t[0]);
      AffineMap<Rational> map{A, V.col(t[0])};
      if (affine_det(map) < 0) std::swap(t[2], t[3]);
      cells.push_back(t);
    }
    m = build(3, CellKind::Simplex, V, cells);
  } else if (name == "cube-hex") {
    RatMat V(3, 8);
    for (int b = 0; b < 8; ++b) {
      V(0, b) = b & 1;
      V(1, b) = (b >> 1) & 1;
      V(2, b) = (b >> 2) & 1;
    }
    m = build(3, CellKind::Box, V, {{0, 1, 2, 3, 4, 5, 6, 7}});
  } else if (name == "lshape-tri") {
    RatMat V(2, 8);
    V << -1, 0, -1, 0, 1, -1, 0, 1,
         -1, -1, 0, 0, 0, 1, 1, 1;
    m = build(2, CellKind::Simplex, V,
              {{0, 1, 3}, {0, 3, 2}, {2, 3, 6}, {2, 6, 5}, {3, 4, 7}, {3, 7, 6}});
  } else {
    throw std::runtime_error("mesh: unknown builtin '" + name + "'");
  }
  for (int r = 0; r < refine; ++r) m = m.refined();
  return m;
}

Mesh Mesh::load(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) throw std::runtime_error("mesh parse error: unexpected end of file");
    return tokens[pos++];
  };
  auto next_int = [&]() {
    const std::string& t = next();
    try {
      std::size_t used = 0;
      int v = std::stoi(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw std::runtime_error("mesh parse error: expected integer, got '" + t + "'");
    }
  };

  int d = next_int(), nv = next_int(), nc = next_int();
  std::string kindword = next();
  CellKind kind;
  if (kindword == "simplex")
    kind = CellKind::Simplex;
  else if (kindword == "cube")
    kind = CellKind::Box;
  else
    throw std::runtime_error("mesh parse error: kind must be 'simplex' or 'cube'");
  if (nv <= 0 || nc <= 0) throw std::runtime_error("mesh parse error: empty mesh");

  RatMat V(d, nv);
  for (int i = 0; i < nv; ++i)
    for (int r = 0; r < d; ++r) {
      const std::string& t = next();
      try {
        std::size_t used = 0;
        double x = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        V(r, i) = to_rational(x);
      } catch (const std::exception&) {
        throw std::runtime_error("mesh parse error: expected coordinate, got '" + t + "'");
      }
    }
  int per_cell = kind == CellKind::Simplex ? d + 1 : 1 << d;
  std::vector<std::vector<int>> cells(nc);
  for (int c = 0; c < nc; ++c)
    for (int k = 0; k < per_cell; ++k) cells[c].push_back(next_int());
  if (pos != tokens.size()) throw std::runtime_error("mesh parse error: trailing tokens");
  return build(d, kind, std::move(V), std::move(cells));
}

Mesh Mesh::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("mesh: cannot open '" + path + "'");
  return load(in);
}

}  // namespace pfec
