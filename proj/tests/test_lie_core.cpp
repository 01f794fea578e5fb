#include <doctest.h>

#include "holoform/lie_algebra.hpp"

using namespace holoform;

namespace {

Vec unit(int dim, int i) { return Vec::Unit(dim, i); }

}  // namespace

TEST_CASE("abelian double basics") {
  Backend b = make_backend("abelian_double", 1);
  const auto& g = *b.algebra;
  CHECK(g.dim() == 2);
  Mat expected(2, 2);
  expected << 0, 1, 1, 0;
  CHECK(max_abs(g.metric() - expected) == 0.0);

  // brackets vanish, pairing is hyperbolic
  Vec x = unit(2, 0), y = unit(2, 1);
  CHECK(g.bracket(x, y).norm() == 0.0);
  CHECK(g.inner(x, y) == 1.0);
  CHECK(g.inner(x, x) == 0.0);

  // exp is coordinate addition
  Vec a(2), c(2);
  a << 0.3, -0.2;
  c << 0.1, 0.5;
  GroupElement ga = g.exp(a), gc = g.exp(c);
  CHECK(max_abs(g.mul(ga, gc).matrix - g.exp(a + c).matrix) < 1e-15);
  CHECK((g.log(g.mul(ga, gc)) - (a + c)).norm() < 1e-14);

  // Ad is trivial
  CHECK((g.ad(ga, c) - c).norm() < 1e-14);
}

TEST_CASE("abelian double n=2 pairing formula") {
  Backend b = make_backend("abelian_double", 2);
  const auto& g = *b.algebra;
  // <(x,xi),(y,eta)> = xi(y) + eta(x)
  Vec v1(4), v2(4);
  v1 << 1.0, 2.0, 0.5, -1.0;  // x = (1,2), xi = (0.5,-1)
  v2 << -3.0, 1.0, 2.0, 0.25;
  const double expected = (0.5 * -3.0 + -1.0 * 1.0) + (2.0 * 1.0 + 0.25 * 2.0);
  CHECK(g.inner(v1, v2) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(g.inner(v1, v2) == g.inner(v2, v1));
}

TEST_CASE("sl2c iwasawa structure") {
  Backend b = make_backend("sl2c_iwasawa");
  const auto& g = *b.algebra;
  CHECK(g.dim() == 6);

  // coordinates in the basis {E-F, i(E+F), iH, H, E, iE}
  Vec E = unit(6, 4);
  Vec H = unit(6, 3);
  Vec iH = unit(6, 2);
  Vec F = E - unit(6, 0);  // F = E - (E - F)

  CHECK((g.bracket(E, F) - H).norm() < 1e-13);
  CHECK(g.bracket(E, E).norm() == 0.0);

  // eta3(E,F,H) = <H,H> (both vanish for the imaginary-part pairing)
  CHECK(g.eta3(E, F, H) == doctest::Approx(g.inner(H, H)).epsilon(1e-13));
  CHECK(std::abs(g.eta3(E, F, H)) < 1e-13);
  CHECK(g.eta3(E, F, iH) == doctest::Approx(2.0).epsilon(1e-13));

  // full antisymmetry
  Rng rng(3);
  Vec x = rng.uniform_vec(6, -1, 1), y = rng.uniform_vec(6, -1, 1),
      z = rng.uniform_vec(6, -1, 1);
  CHECK(std::abs(g.eta3(x, y, z) + g.eta3(y, x, z)) < 1e-12);
  CHECK(std::abs(g.eta3(x, y, z) + g.eta3(x, z, y)) < 1e-12);
  CHECK(std::abs(g.eta3(x, x, z)) < 1e-13);

  SubalgebraReport rep;
  CHECK(is_lagrangian(g, b.span("r"), &rep));
  CHECK(is_lagrangian(g, b.span("b")));
  CHECK(is_lagrangian(g, b.span("v")));
  CHECK(are_transverse(g, b.span("r"), b.span("b")));
  // v is a conjugated imaginary-diagonal Borel: transverse to b, never to
  // the compact form (its elements share an eigenline with some rotation)
  CHECK(are_transverse(g, b.span("v"), b.span("b")));
  CHECK_FALSE(are_transverse(g, b.span("v"), b.span("r")));
  CHECK_FALSE(are_transverse(g, b.span("r"), b.span("r")));
}

TEST_CASE("cotangent double of su(2)") {
  Backend b = make_backend("cotangent_double", 0, "su2");
  const auto& g = *b.algebra;
  CHECK(g.dim() == 6);

  // b part is abelian
  for (int i = 3; i < 6; ++i)
    for (int j = 3; j < 6; ++j) CHECK(g.bracket(unit(6, i), unit(6, j)).norm() == 0.0);

  CHECK(is_lagrangian(g, b.span("r")));
  CHECK(is_lagrangian(g, b.span("b")));
  CHECK(is_lagrangian(g, b.span("v")));
  CHECK(are_transverse(g, b.span("r"), b.span("b")));
  CHECK(are_transverse(g, b.span("v"), b.span("b")));
  // v = graph of a coadjoint coboundary: never transverse to r
  CHECK_FALSE(are_transverse(g, b.span("v"), b.span("r")));
}

TEST_CASE("exp/log/Ad contracts") {
  for (const char* name : {"abelian_double", "cotangent_double", "sl2c_iwasawa"}) {
    Backend b = make_backend(name, 2);
    const auto& g = *b.algebra;
    CAPTURE(name);

    CHECK(max_abs(g.exp(Vec::Zero(g.dim())).matrix -
                  Mat::Identity(g.rep_size(), g.rep_size())) == 0.0);

    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
      Vec x = rng.uniform_vec(g.dim(), -1, 1);
      x /= std::max(1.0, x.norm());
      GroupElement e = g.exp(x);
      CHECK((g.log(e) - x).norm() <= 1e-11);
      CHECK(max_abs(g.mul(e, g.exp(-x)).matrix -
                    Mat::Identity(g.rep_size(), g.rep_size())) <= 1e-13);
    }

    // Ad first-order expansion: Ad(exp(z)) x = x + [z,x] + O(|z|^2)
    Vec z = 1e-4 * rng.uniform_vec(g.dim(), -1, 1).normalized();
    Vec x = rng.uniform_vec(g.dim(), -1, 1);
    Vec lhs = g.ad(g.exp(z), x);
    CHECK((lhs - (x + g.bracket(z, x))).norm() <= 1e-7);
    CHECK((g.ad(g.identity(), x) - x).norm() <= 1e-14);

    // metric Ad-invariance under random group elements
    for (int t = 0; t < 100; ++t) {
      GroupElement h = g.exp(rng.uniform_vec(g.dim(), -0.5, 0.5));
      Vec u = rng.uniform_vec(g.dim(), -1, 1), v = rng.uniform_vec(g.dim(), -1, 1);
      CHECK(std::abs(g.inner(g.ad(h, u), g.ad(h, v)) - g.inner(u, v)) <= 1e-9);
    }
  }
}

TEST_CASE("log rejects points outside the principal branch") {
  Backend b = make_backend("sl2c_iwasawa");
  const auto& g = *b.algebra;
  // rotation by pi inside SU(2): -1 eigenvalue pair
  Vec x = Vec::Zero(6);
  x(2) = 3.14159265358979323846;  // iH direction
  GroupElement e = g.exp(x);
  CHECK_THROWS_AS((void)g.log(e), std::domain_error);
}

TEST_CASE("catalog certificates at 1e-10") {
  for (const char* name : {"abelian_double", "cotangent_double", "sl2c_iwasawa"}) {
    Backend b = make_backend(name, 2);
    CAPTURE(name);
    CHECK(b.algebra->jacobi_residual() <= 1e-12);
    CHECK(b.algebra->metric_invariance_residual() <= 1e-12);
    for (const auto& [key, span] : b.spans) {
      SubalgebraReport rep;
      CHECK(is_lagrangian(*b.algebra, span, &rep));
      CHECK(rep.isotropy_residual <= 1e-10);
      CHECK(rep.closure_residual <= 1e-10);
    }
    CHECK(are_transverse(*b.algebra, b.span("r"), b.span("b")));
  }
  CHECK_THROWS_AS(make_backend("nonsense"), std::invalid_argument);
  CHECK_THROWS_AS(make_backend("cotangent_double", 0, "e8"), std::invalid_argument);
}

TEST_CASE("graph of an invertible skew map is Lagrangian and transverse") {
  Backend b = make_backend("abelian_double", 2);
  const auto& g = *b.algebra;
  CHECK(is_lagrangian(g, b.span("v")));
  CHECK(are_transverse(g, b.span("v"), b.span("r")));
  CHECK(are_transverse(g, b.span("v"), b.span("b")));

  // n = 1 forces theta = 0, i.e. v = b: transversality to b fails
  Backend b1 = make_backend("abelian_double", 1);
  CHECK_FALSE(b1.has_span("v"));
  CHECK_FALSE(are_transverse(*b1.algebra, b1.span("b"), b1.span("b")));
}
