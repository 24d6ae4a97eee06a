#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "pfec/mesh.hpp"

using namespace pfec;

TEST_CASE("two-triangle unit square: counts and boundary") {
  Mesh m = Mesh::builtin("square-tri");
  CHECK(m.dim() == 2);
  CHECK(m.num_vertices() == 4);
  CHECK(m.num_cells() == 2);
  CHECK(m.num_facets(1) == 5);
  int interior = 0;
  for (int f = 0; f < m.num_facets(1); ++f)
    if (!m.facet(1, f).boundary) ++interior;
  CHECK(interior == 1);
  CHECK(m.euler_characteristic() == 1);
  // all four vertices lie on the boundary
  for (int v = 0; v < m.num_facets(0); ++v) CHECK(m.facet(0, v).boundary);
}

TEST_CASE("Kuhn split of the unit cube") {
  Mesh m = Mesh::builtin("cube-tet");
  CHECK(m.num_vertices() == 8);
  CHECK(m.num_cells() == 6);
  CHECK(m.num_facets(1) == 19);
  CHECK(m.euler_characteristic() == 1);
  // every cell has positive volume 1/6
  for (int c = 0; c < m.num_cells(); ++c) {
    CellGeom<Rational> K = m.cell_geom(c);
    CHECK(affine_det(K.map) == Rational(1));
  }
  // interior faces: total faces minus the 12 boundary triangles
  int nb = 0;
  for (int f = 0; f < m.num_facets(2); ++f)
    if (m.facet(2, f).boundary) ++nb;
  CHECK(nb == 12);
}

TEST_CASE("builtins validate and refine with exact cell count scaling") {
  for (const char* name : {"square-tri", "square-quad", "cube-tet", "cube-hex", "lshape-tri"}) {
    Mesh m = Mesh::builtin(name);
    int d = m.dim();
    Mesh r = m.refined();
    CHECK(r.num_cells() == m.num_cells() * (1 << d));
    CHECK(r.euler_characteristic() == 1);
    CHECK(m.euler_characteristic() == 1);
    Mesh r2 = Mesh::builtin(name, 2);
    CHECK(r2.num_cells() == m.num_cells() * (1 << (2 * d)));
  }
  CHECK(Mesh::builtin("square-tri", 1).num_cells() == 8);
  CHECK_THROWS(Mesh::builtin("no-such-mesh"));
  CHECK_THROWS(Mesh::builtin("square-tri", 6));
  CHECK_THROWS(Mesh::builtin("square-tri", -1));
}

TEST_CASE("lshape-tri base pattern") {
  Mesh m = Mesh::builtin("lshape-tri");
  CHECK(m.num_vertices() == 8);
  CHECK(m.num_cells() == 6);
  CHECK(m.num_facets(1) == 13);
  CHECK(m.euler_characteristic() == 1);
  // total area 3
  Rational area = 0;
  for (int c = 0; c < m.num_cells(); ++c) area += affine_det(m.cell_geom(c).map) / 2;
  CHECK(area == Rational(3));
}

TEST_CASE("facet charts agree between incident cells") {
  // the global chart makes traces from both sides identical by construction;
  // verify each shared facet is an exact affine subset of both cells
  for (const char* name : {"square-tri", "cube-tet", "cube-hex", "lshape-tri"}) {
    Mesh m = Mesh::builtin(name, 1);
    int d = m.dim();
    for (int f = 0; f < m.num_facets(d - 1); ++f) {
      const Facet& F = m.facet(d - 1, f);
      CHECK((F.boundary ? F.cells.size() == 1 : F.cells.size() == 2));
      for (int c : F.cells) {
        // inclusion of the facet into the cell reference frame must factor
        int cf = m.cell_subfacets(c, d)[0];
        AffineMap<Rational> incl = m.inclusion(d - 1, f, d, cf);
        const AffineMap<Rational>& chart = m.facet(d, cf).chart;
        CHECK(RatMat(chart.A * incl.A) == F.chart.A);
        CHECK(RatVec(chart.A * incl.b + chart.b) == F.chart.b);
      }
    }
  }
}

TEST_CASE("subfacet lattice is closed and consistent") {
  Mesh m = Mesh::builtin("cube-tet");
  for (int mdim = 0; mdim <= 3; ++mdim)
    for (int f = 0; f < m.num_facets(mdim); ++f) {
      const Facet& F = m.facet(mdim, f);
      for (int ms = 0; ms <= mdim; ++ms)
        for (int sf : m.subfacets(mdim, f, ms)) {
          CHECK(sf >= 0);
          const Facet& S = m.facet(ms, sf);
          CHECK(std::includes(F.key.begin(), F.key.end(), S.key.begin(), S.key.end()));
          if (ms >= 1) {
            AffineMap<Rational> incl = m.inclusion(ms, sf, mdim, f);
            CHECK(RatMat(F.chart.A * incl.A) == S.chart.A);
          }
        }
    }
}

TEST_CASE("star center boxes sit inside their cells") {
  // reference triangle: centroid lands at (1/3, 1/3)
  Mesh m = Mesh::builtin("square-tri");
  RatVec c, h;
  m.star_center_box(0, c, h);
  CHECK(c(0) == Rational(2) / 3);  // cell 0 is (0,0),(1,0),(1,1)
  CHECK(c(1) == Rational(1) / 3);
  CHECK(h(0) > 0);
  CHECK(h(0) == h(1));

  // unit cube: center (1/2,1/2,1/2), half width exactly 1/8
  Mesh cube = Mesh::builtin("cube-hex");
  cube.star_center_box(0, c, h);
  for (int i = 0; i < 3; ++i) {
    CHECK(c(i) == Rational(1) / 2);
    CHECK(h(i) == Rational(1) / 8);
  }

  // containment holds on every cell of every builtin (throws otherwise)
  for (const char* name : {"square-tri", "square-quad", "cube-tet", "cube-hex", "lshape-tri"}) {
    Mesh mm = Mesh::builtin(name, 1);
    for (int cc = 0; cc < mm.num_cells(); ++cc) {
      RatVec cen, hw;
      CHECK_NOTHROW(mm.star_center_box(cc, cen, hw));
    }
  }
}

TEST_CASE("ascii loader round trip and validation errors") {
  {
    std::istringstream in(
        "# unit square, two triangles\n"
        "2 4 2 simplex\n"
        "0 0\n1 0\n1 1\n0 1\n"
        "0 1 2\n0 2 3\n");
    Mesh m = Mesh::load(in);
    CHECK(m.num_vertices() == 4);
    CHECK(m.num_cells() == 2);
    CHECK(m.num_facets(1) == 5);
  }
  {
    // duplicate cell is a conformity error
    std::istringstream in(
        "2 4 2 simplex\n0 0\n1 0\n1 1\n0 1\n0 1 2\n2 0 1\n");
    CHECK_THROWS_WITH_AS(Mesh::load(in), doctest::Contains("duplicate cell"),
                         std::runtime_error);
  }
  {
    // inverted cell
    std::istringstream in("2 4 2 simplex\n0 0\n1 0\n1 1\n0 1\n0 2 1\n0 2 3\n");
    CHECK_THROWS_WITH_AS(Mesh::load(in), doctest::Contains("inverted"), std::runtime_error);
  }
  {
    // degenerate cell (collinear)
    std::istringstream in("2 4 2 simplex\n0 0\n1 0\n2 0\n0 1\n0 1 2\n0 2 3\n");
    CHECK_THROWS(Mesh::load(in));
  }
  {
    // hanging-node style overlap: two cells meet in a set that is a facet of
    // only one of them
    std::istringstream in(
        "2 5 3 simplex\n0 0\n1 0\n1 1\n0 1\n0.5 0.5\n0 1 4\n1 2 4\n0 2 3\n");
    CHECK_THROWS_WITH_AS(Mesh::load(in), doctest::Contains("nonconforming"),
                         std::runtime_error);
  }
  {
    // non-parallelogram quad rejected
    std::istringstream in("2 4 1 cube\n0 0\n1 0\n0 1\n2 2\n0 1 2 3\n");
    CHECK_THROWS_WITH_AS(Mesh::load(in), doctest::Contains("cube image"), std::runtime_error);
  }
  {
    // parse error
    std::istringstream in("2 4 1 simplex\n0 0\n");
    CHECK_THROWS_WITH_AS(Mesh::load(in), doctest::Contains("parse"), std::runtime_error);
  }
  {
    // bad kind word
    std::istringstream in("2 3 1 tet\n0 0\n1 0\n0 1\n0 1 2\n");
    CHECK_THROWS_WITH_AS(Mesh::load(in), doctest::Contains("kind"), std::runtime_error);
  }
}

TEST_CASE("refined meshes keep conformity through two levels") {
  for (const char* name : {"square-tri", "cube-tet", "cube-hex"}) {
    Mesh m = Mesh::builtin(name, 2);
    int d = m.dim();
    for (int f = 0; f < m.num_facets(d - 1); ++f) {
      const Facet& F = m.facet(d - 1, f);
      CHECK(F.cells.size() >= 1);
      CHECK(F.cells.size() <= 2);
    }
    CHECK(m.euler_characteristic() == 1);
  }
}
