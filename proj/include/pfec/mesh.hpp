#pragma once

// Conforming affine meshes: simplices or affine cube images, with the full
// facet lattice (dimensions 0..d), global facet charts fixed by the
// increasing-vertex-id convention, boundary flags, and exact rational
// geometry throughout.

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "pfec/integration.hpp"
#include "pfec/polyform.hpp"

namespace pfec {

struct Facet {
  int m = 0;                      // facet dimension
  CellKind kind = CellKind::Simplex;
  std::vector<int> key;           // sorted global vertex ids, the identity
  std::vector<int> chart_order;   // vertex ids in reference ordering
  AffineMap<Rational> chart;      // reference m-cell -> ambient space (m >= 1)
  bool boundary = false;
  std::vector<int> cells;         // incident top-dimensional cells, ascending
};

class Mesh {
 public:
  static Mesh builtin(const std::string& name, int refine = 0);
  static Mesh load(std::istream& in);
  static Mesh load_file(const std::string& path);

  int dim() const { return d_; }
  CellKind cell_kind() const { return kind_; }
  int num_vertices() const { return static_cast<int>(verts_.cols()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  RatVec vertex(int i) const { return verts_.col(i); }
  const std::vector<std::vector<int>>& cells() const { return cells_; }

  // exact affine map from the reference cell onto cell c
  CellGeom<Rational> cell_geom(int c) const;
  CellGeom<double> cell_geom_d(int c) const;

  int num_facets(int m) const { return static_cast<int>(facets_[m].size()); }
  const Facet& facet(int m, int i) const { return facets_[m][i]; }
  int facet_index(int m, std::vector<int> sorted_ids) const;
  const std::vector<int>& cell_subfacets(int c, int m) const {
    return cell_subfacets_[c][m];
  }
  // msub-dimensional subfacets of facet (m, f), deterministic order
  std::vector<int> subfacets(int m, int f, int msub) const;

  // exact map t -> s between reference cells with chart_f(incl(t)) = chart_fsub(t)
  AffineMap<Rational> inclusion(int msub, int fsub, int m, int f) const;

  // axis-aligned box at the cell centroid; every cell is star shaped with
  // respect to it (convexity is validated at construction)
  void star_center_box(int c, RatVec& center, RatVec& halfwidth) const;

  Mesh refined() const;
  int euler_characteristic() const;

 private:
  Mesh() = default;
  static Mesh build(int d, CellKind kind, RatMat verts,
                    std::vector<std::vector<int>> cells);
  void validate_cells() const;
  void build_facets();
  void mark_boundary();
  void check_conformity() const;
  std::vector<int> box_chart_order(const std::vector<int>& key) const;
  AffineMap<Rational> chart_from_order(const std::vector<int>& order, int m) const;

  int d_ = 0;
  CellKind kind_ = CellKind::Simplex;
  RatMat verts_;                         // d x nv
  std::vector<std::vector<int>> cells_;  // reference ordering per cell
  std::vector<std::vector<Facet>> facets_;              // by dimension m
  std::vector<std::map<std::vector<int>, int>> index_;  // key -> facet id
  std::vector<std::vector<std::vector<int>>> cell_subfacets_;  // [cell][m]
};

}  // namespace pfec
