#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pfec/integration.hpp"
#include "pfec/lifting.hpp"
#include "test_util.hpp"

using namespace pfec;
using pfec_test::random_form;
using pfec_test::random_point;

namespace {

BumpWeight<Rational> centered_bump(int dim, int k) {
  VecX<Rational> c(dim), h(dim);
  for (int i = 0; i < dim; ++i) {
    c(i) = Rational(1) / 2;
    h(i) = Rational(1) / 4;
  }
  return BumpWeight<Rational>(c, h, k);
}

}  // namespace

TEST_CASE("bump weight moments") {
  auto theta = centered_bump(2, 2);
  CHECK(theta.moment(0, 0) == Rational(1));
  CHECK(theta.moment(0, 1) == Rational(1) / 2);
  // second moment about zero: c^2 + h^2/(2k+3)
  CHECK(theta.moment(0, 2) == Rational(1) / 4 + Rational(1) / (16 * 7));
  auto theta1 = centered_bump(2, 1);
  CHECK(theta1.moment(1, 2) == Rational(1) / 4 + Rational(1) / (16 * 5));

  auto x = PolyForm<Rational>::monomial(2, 0, mono_bump(zero_mono(), 0), Rational(1));
  CHECK(theta.weighted_mean(x) == Rational(1) / 2);
}

TEST_CASE("bump density has unit mass and compact support") {
  for (int dim = 2; dim <= 3; ++dim)
    for (int k = 1; k <= 3; ++k) {
      auto theta = centered_bump(dim, k);
      PolyForm<Rational> rho = theta.density();
      // integrate over the support box [1/4, 3/4]^dim
      CellGeom<Rational> box;
      box.kind = CellKind::Box;
      box.map.A = RatMat::Identity(dim, dim) * (Rational(1) / 2);
      box.map.b = VecX<Rational>::Constant(dim, Rational(1) / 4);
      auto one = PolyForm<Rational>::constant(dim, Rational(1));
      CHECK(l2_inner(rho, one, box) == Rational(1));
      // density vanishes on the support boundary
      VecX<Rational> edge = VecX<Rational>::Constant(dim, Rational(1) / 2);
      edge(0) = Rational(3) / 4;
      CHECK(rho.eval(edge).at(0) == Rational(0));
    }
}

TEST_CASE("frozen lifting values at the origin") {
  // constant area form lifts to the rotational field
  auto dx = PolyForm<Rational>::monomial(2, 0b01, zero_mono(), Rational(1));
  auto dy = PolyForm<Rational>::monomial(2, 0b10, zero_mono(), Rational(1));
  auto area = wedge(dx, dy);
  VecX<Rational> origin = VecX<Rational>::Zero(2);
  auto lift = poincare_point(origin, area);
  auto expect = wedge(PolyForm<Rational>::monomial(2, 0, mono_bump(zero_mono(), 0), Rational(1)), dy);
  expect -= wedge(PolyForm<Rational>::monomial(2, 0, mono_bump(zero_mono(), 1), Rational(1)), dx);
  expect *= Rational(1) / 2;
  CHECK(lift == expect);

  // homogeneous scaling: a degree-q coefficient picks up 1/(l+q)
  Mono x2 = zero_mono();
  x2[0] = 2;
  auto u = PolyForm<Rational>::monomial(2, 0b01, x2, Rational(1));  // x^2 dx
  auto lifted = poincare_point(origin, u);
  Mono x3 = zero_mono();
  x3[0] = 3;
  auto cubic = PolyForm<Rational>::monomial(2, 0, x3, Rational(1));
  cubic *= Rational(1) / 3;
  CHECK(lifted == cubic);
  CHECK(exterior_derivative(lifted) == u);
}

TEST_CASE("regularized lifting of the area form averages the base point") {
  auto dx = PolyForm<Rational>::monomial(2, 0b01, zero_mono(), Rational(1));
  auto dy = PolyForm<Rational>::monomial(2, 0b10, zero_mono(), Rational(1));
  auto area = wedge(dx, dy);
  auto theta = centered_bump(2, 2);
  auto lift = poincare_regularized(theta, area);
  // average of ((x-a1) dy - (y-a2) dx)/2 against the bump
  auto x = PolyForm<Rational>::monomial(2, 0, mono_bump(zero_mono(), 0), Rational(1));
  auto y = PolyForm<Rational>::monomial(2, 0, mono_bump(zero_mono(), 1), Rational(1));
  auto xc = x;
  xc -= PolyForm<Rational>::constant(2, Rational(1) / 2);
  auto yc = y;
  yc -= PolyForm<Rational>::constant(2, Rational(1) / 2);
  auto expect = wedge(xc, dy);
  expect -= wedge(yc, dx);
  expect *= Rational(1) / 2;
  CHECK(lift == expect);
}

TEST_CASE("point-based homotopy identity is exact on polynomial forms") {
  std::mt19937 rng(21);
  for (int dim = 2; dim <= 3; ++dim)
    for (int l = 0; l <= dim; ++l)
      for (int deg = 0; deg <= 8; deg += 2) {
        auto u = random_form(rng, dim, l, deg);
        auto a = random_point(rng, dim);
        CHECK(homotopy_residual(a, u).is_zero());
      }
}

TEST_CASE("regularized homotopy identity is exact on polynomial forms") {
  std::mt19937 rng(22);
  for (int dim = 2; dim <= 3; ++dim)
    for (int l = 0; l <= dim; ++l)
      for (int deg = 0; deg <= 8; deg += 4) {
        auto u = random_form(rng, dim, l, deg);
        auto theta = centered_bump(dim, 1 + (deg % 3));
        CHECK(homotopy_residual(theta, u).is_zero());
      }
}

TEST_CASE("top forms are exact derivatives of their lifting") {
  std::mt19937 rng(23);
  for (int dim = 2; dim <= 3; ++dim) {
    auto u = random_form(rng, dim, dim, 6);
    auto theta = centered_bump(dim, 2);
    CHECK(exterior_derivative(poincare_regularized(theta, u)) == u);
    auto a = random_point(rng, dim);
    CHECK(exterior_derivative(poincare_point(a, u)) == u);
  }
}

TEST_CASE("gradients recover their potential up to the weighted mean") {
  std::mt19937 rng(24);
  for (int dim = 2; dim <= 3; ++dim) {
    auto u = random_form(rng, dim, 0, 7);
    auto theta = centered_bump(dim, 3);
    auto rec = poincare_regularized(theta, exterior_derivative(u));
    rec += PolyForm<Rational>::constant(dim, theta.weighted_mean(u));
    CHECK(rec == u);
    auto a = random_point(rng, dim);
    auto rec2 = poincare_point(a, exterior_derivative(u));
    rec2 += PolyForm<Rational>::constant(dim, u.eval(a).at(0));
    CHECK(rec2 == u);
  }
}

TEST_CASE("lifting drops the polynomial degree bookkeeping correctly") {
  // lifting a degree-q l-form yields degree q+1 coefficients on an (l-1)-form
  std::mt19937 rng(25);
  auto u = random_form(rng, 3, 2, 4);
  auto theta = centered_bump(3, 2);
  auto lift = poincare_regularized(theta, u);
  CHECK(lift.form_degree() == 1);
  CHECK(lift.poly_degree() <= 5);
  CHECK(poincare_point(random_point(rng, 3), u).form_degree() == 1);
}

TEST_CASE("lifting a zero form degree input throws") {
  auto u = PolyForm<Rational>::constant(2, Rational(1));
  VecX<Rational> a = VecX<Rational>::Zero(2);
  CHECK_THROWS(poincare_point(a, u));
  CHECK_THROWS(poincare_regularized(centered_bump(2, 1), u));
}
