#include <doctest.h>

#include "holoform/symplectic.hpp"

using namespace holoform;

namespace {

ExtJet random_jet(const QuadraticLieAlgebra& g, Rng& rng, int m) {
  ExtJet jet;
  jet.value = g.exp(rng.uniform_vec(g.dim(), -0.4, 0.4)).matrix;
  jet.dlog.resize(g.dim(), m);
  for (int j = 0; j < m; ++j) jet.dlog.col(j) = rng.uniform_vec(g.dim(), -1, 1);
  jet.form = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      jet.form(i, j) = rng.uniform(-1, 1);
      jet.form(j, i) = -jet.form(i, j);
    }
  return jet;
}

}  // namespace

TEST_CASE("extension jets: unit, inverse, associativity") {
  Backend b = make_backend("sl2c_iwasawa");
  const auto& g = *b.algebra;
  Rng rng(1);
  const int m = 3;
  ExtJet e = ext_identity(g, m);
  ExtJet a = random_jet(g, rng, m);

  ExtJet ea = ext_mul(g, e, a);
  CHECK(max_abs(ea.value - a.value) <= 1e-14);
  CHECK(max_abs(ea.dlog - a.dlog) <= 1e-12);
  CHECK(max_abs(ea.form - a.form) <= 1e-13);

  // (g, omega)^{-1} = (g^{-1}, -omega); products against the inverse are
  // identity jets with zero form
  ExtJet inv = ext_inv(g, a);
  CHECK(max_abs(inv.form + a.form) == 0.0);
  ExtJet unit1 = ext_mul(g, a, inv);
  CHECK(max_abs(unit1.value - e.value) <= 1e-12);
  CHECK(max_abs(unit1.dlog) <= 1e-12);
  CHECK(max_abs(unit1.form) <= 1e-12);
  ExtJet unit2 = ext_mul(g, inv, a);
  CHECK(max_abs(unit2.form) <= 1e-12);

  ExtJet invinv = ext_inv(g, ext_inv(g, a));
  CHECK(max_abs(invinv.value - a.value) <= 1e-13);
  CHECK(max_abs(invinv.dlog - a.dlog) <= 1e-13);

  for (int trial = 0; trial < 10; ++trial) {
    ExtJet x = random_jet(g, rng, m), y = random_jet(g, rng, m), z = random_jet(g, rng, m);
    ExtJet left = ext_mul(g, ext_mul(g, x, y), z);
    ExtJet right = ext_mul(g, x, ext_mul(g, y, z));
    CHECK(max_abs(left.form - right.form) <= 1e-12);
    CHECK(max_abs(left.dlog - right.dlog) <= 1e-12);
    CHECK(max_abs(left.value - right.value) <= 1e-13);
  }
}

TEST_CASE("abelian r/b square: omega equals the hyperbolic pairing value") {
  Backend ab = make_backend("abelian_double", 1);
  ColoredPolygon sq = builtin_surface("square", ab);
  ModuliPoint pt = random_point(sq, 2, 0.2);

  // parameter slots in word order: r1, b1, r2, b2
  Vec xi = Vec::Zero(4), eta = Vec::Zero(4);
  xi(0) = 1.0;
  xi(2) = 1.0;  // (dr1, dr2) = (1, 1)
  eta(1) = 1.0;
  eta(3) = 1.0;  // (db1, db2) = (1, 1)
  Mat vectors(4, 2);
  vectors.col(0) = xi;
  vectors.col(1) = eta;
  Mat gram = omega_gram(pt, vectors, true);
  CHECK(gram(0, 1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(gram(1, 0) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(gram(0, 0) == doctest::Approx(0.0).epsilon(1e-14));

  CHECK(closed_form_square_rb(pt, xi, eta) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(closed_form_square_rb(pt, eta, xi) == doctest::Approx(-1.0).epsilon(1e-13));

  // nondegeneracy: the Gram on the orthonormal tangent basis has both
  // singular values exactly 1/2
  Mat basis = tangent_basis(pt);
  CHECK(check_nondegenerate(pt, basis) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("abelian triangle: omega = theta on the v parameters") {
  Backend ab = make_backend("abelian_double", 2);
  ColoredPolygon tri = builtin_surface("triangle", ab);
  ModuliPoint pt = random_point(tri, 3, 0.2);
  // tangents: du = e1 and du = e2, with dr = -theta du, db = -du;
  // omega(xi, eta) = du_xi . theta du_eta = theta_12 = 1/2
  const Mat& rspan = pt.layout.slots[0].directions;
  const Mat& vspan = pt.layout.slots[1].directions;
  const Mat& bspan = pt.layout.slots[2].directions;
  Mat theta(2, 2);
  theta << 0, 0.5, -0.5, 0;
  auto tangent_for = [&](const Vec& du) {
    Vec lam_v(4), lam_r(4), lam_b(4);
    lam_v << theta * du, du;
    lam_r << -theta * du, Vec::Zero(2);
    lam_b << Vec::Zero(2), -du;
    Vec t = Vec::Zero(pt.params());
    t.segment(pt.layout.slots[0].param_offset, 2) = rspan * lam_r;
    t.segment(pt.layout.slots[1].param_offset, 2) = vspan * lam_v;
    t.segment(pt.layout.slots[2].param_offset, 2) = bspan * lam_b;
    return t;
  };
  Vec xi = tangent_for(Vec::Unit(2, 0));
  Vec eta = tangent_for(Vec::Unit(2, 1));
  Mat vectors(pt.params(), 2);
  vectors.col(0) = xi;
  vectors.col(1) = eta;
  Mat gram = omega_gram(pt, vectors, true);
  CHECK(gram(0, 1) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(closed_form_triangle(pt, xi, eta) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(closed_form_triangle(pt, eta, xi) == doctest::Approx(-0.5).epsilon(1e-13));

  // full agreement on the tangent basis
  Mat basis = tangent_basis(pt);
  Mat om = omega_matrix(pt, basis);
  for (int i = 0; i < basis.cols(); ++i)
    for (int j = 0; j < basis.cols(); ++j)
      CHECK(om(i, j) ==
            doctest::Approx(closed_form_triangle(pt, basis.col(i), basis.col(j)))
                .epsilon(1e-12));
}

TEST_CASE("abelian annulus: frozen pairings and the paper's product formula") {
  Backend ab = make_backend("abelian_double", 1);
  ColoredPolygon an = builtin_surface("annulus_with_cut", ab);
  ModuliPoint pt = random_point(an, 4, 0.2);
  // parameter layout: arcs r1, b1, b2, r2 (word order), then the cut (2)
  auto tangent = [&](double x, double y, double a, double alpha) {
    Vec t(6);
    t << x, y, y, x, a, alpha;
    return t;
  };
  // omega = dy ^ da - dx ^ dalpha on (x, y, a, alpha)
  struct Case {
    Vec xi, eta;
    double expected;
  };
  std::vector<Case> cases = {
      {tangent(1, 0, 0, 0), tangent(0, 0, 0, 1), -1.0},
      {tangent(0, 1, 0, 0), tangent(0, 0, 1, 0), 1.0},
      {tangent(1, 0, 0, 0), tangent(0, 0, 1, 0), 0.0},
      {tangent(0, 1, 0, 0), tangent(0, 0, 0, 1), 0.0},
  };
  for (const Case& c : cases) {
    Mat vectors(6, 2);
    vectors.col(0) = c.xi;
    vectors.col(1) = c.eta;
    Mat gram = omega_gram(pt, vectors, true);
    CHECK(gram(0, 1) == doctest::Approx(c.expected).epsilon(1e-13));
    CHECK(closed_form_annulus(pt, c.xi, c.eta) ==
          doctest::Approx(c.expected).epsilon(1e-13));
  }
}

TEST_CASE("sl2c square: holonomy formula vs closed form") {
  Backend sl = make_backend("sl2c_iwasawa");
  ColoredPolygon sq = builtin_surface("square", sl);
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    ModuliPoint pt = random_point(sq, seed, 0.2);
    Mat basis = tangent_basis(pt);
    Mat om = omega_matrix(pt, basis);
    CHECK(max_abs(om + om.transpose()) <= 1e-13);
    double worst = 0.0;
    for (int i = 0; i < basis.cols(); ++i)
      for (int j = 0; j < basis.cols(); ++j)
        worst = std::max(worst, std::abs(om(i, j) - closed_form_square_rb(
                                                        pt, basis.col(i), basis.col(j))));
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("r/b/v square with v frozen at the identity reduces to the r/b formula") {
  Backend sl = make_backend("sl2c_iwasawa");
  ColoredPolygon rbv = builtin_surface("gamma11", sl);
  const Mat id = Mat::Identity(sl.algebra->rep_size(), sl.algebra->rep_size());
  ModuliPoint pt = random_point_with_fixed_slot(rbv, 9, 0.2, 2, id);
  Mat basis = tangent_basis_frozen(pt, {pt.layout.side_slot[2]});
  REQUIRE(basis.cols() > 0);

  // corresponding r/b square point: (r, b1, r2 = 1, b2)
  ColoredPolygon sq = builtin_surface("square", sl);
  ModuliPoint rb = identity_point(sq);
  rb.holonomy[0] = pt.holonomy[pt.layout.side_slot[0]];
  rb.holonomy[1] = pt.holonomy[pt.layout.side_slot[1]];
  rb.holonomy[3] = pt.holonomy[pt.layout.side_slot[3]];
  REQUIRE(constraint_residual(rb).norm() <= 1e-11);

  for (int i = 0; i < basis.cols(); ++i)
    for (int j = 0; j < basis.cols(); ++j) {
      Vec xi = basis.col(i), eta = basis.col(j);
      // same per-slot components on both sides (v contributes nothing)
      double a = closed_form_square_rbv(pt, xi, eta);
      double b = closed_form_square_rb(rb, xi, eta);
      CHECK(a == doctest::Approx(b).epsilon(1e-11));
    }
}

TEST_CASE("cut 2-form perturbations cancel exactly") {
  Backend sl = make_backend("sl2c_iwasawa");
  ColoredPolygon an = builtin_surface("annulus_with_cut", sl);
  ModuliPoint pt = random_point(an, 6, 0.15);
  Mat basis = tangent_basis(pt);
  Mat reference = omega_gram(pt, basis, true);
  Rng rng(8);
  Mat beta = Mat::Zero(basis.cols(), basis.cols());
  for (int i = 0; i < beta.rows(); ++i)
    for (int j = i + 1; j < beta.cols(); ++j) {
      beta(i, j) = rng.uniform(-2, 2);
      beta(j, i) = -beta(i, j);
    }
  std::map<int, Mat> pert = {{2, beta}, {5, -beta}};
  Mat perturbed = omega_gram(pt, basis, true, 0, &pert);
  CHECK(max_abs(perturbed - reference) == 0.0);
}

TEST_CASE("presentation invariance: base rotation and re-cutting") {
  Backend ab = make_backend("abelian_double", 1);
  ColoredPolygon an_ab = builtin_surface("annulus_with_cut", ab);
  ModuliPoint pa = random_point(an_ab, 12, 0.2);
  InvarianceReport ra = invariance_checks(pa, tangent_basis(pa));
  CHECK(ra.rotation_residual <= 1e-13);
  CHECK(ra.recut_residual >= 0.0);
  CHECK(ra.recut_residual <= 1e-13);

  Backend sl = make_backend("sl2c_iwasawa");
  ColoredPolygon sq = builtin_surface("square", sl);
  ModuliPoint ps = random_point(sq, 13, 0.2);
  InvarianceReport rs = invariance_checks(ps, tangent_basis(ps));
  CHECK(rs.rotation_residual <= 1e-12);

  ColoredPolygon an = builtin_surface("annulus_with_cut", sl);
  ModuliPoint pn = random_point(an, 14, 0.15);
  InvarianceReport rn = invariance_checks(pn, tangent_basis(pn));
  CHECK(rn.rotation_residual <= 1e-10);
  CHECK(rn.recut_residual <= 1e-10);
}

TEST_CASE("closedness by finite differences") {
  Backend ab = make_backend("abelian_double", 2);
  ColoredPolygon g11 = builtin_surface("gamma11", ab);
  ModuliPoint pt = random_point(g11, 5, 0.2);
  ClosednessReport ca = check_closed(pt, tangent_basis(pt));
  CHECK(ca.max_residual <= 1e-12);

  Backend sl = make_backend("sl2c_iwasawa");
  ColoredPolygon sq = builtin_surface("square", sl);
  ModuliPoint ps = random_point(sq, 5, 0.2);
  ClosednessReport cs = check_closed(ps, tangent_basis(ps));
  CHECK(cs.max_residual <= 1e-4);
}

TEST_CASE("composition: abelian parameter addition and seam checks") {
  Backend ab = make_backend("abelian_double", 1);
  ColoredPolygon sq = builtin_surface("square", ab);
  ModuliPoint p = random_point(sq, 21, 0.2);
  ModuliPoint q = random_point_with_fixed_slot(sq, 22, 0.2, 3, lw_source(p));
  ComposeResult pq = compose(p, 1, q, 3);
  CHECK(constraint_residual(pq.point).norm() <= 1e-13);

  // abelian: merged holonomies are parameter sums
  const auto& alg = *ab.algebra;
  Vec r1p = alg.log({p.holonomy[p.layout.side_slot[0]]});
  Vec r1q = alg.log({q.holonomy[q.layout.side_slot[0]]});
  bool found = false;
  for (int i = 0; i < pq.point.surface.size(); ++i) {
    if (pq.glued.sides[i].sources.size() == 2 && !pq.point.surface.word[i].reversed) {
      Vec merged = alg.log({pq.point.holonomy[pq.point.layout.side_slot[i]]});
      CHECK((merged - (r1p + r1q)).norm() <= 1e-13);
      found = true;
    }
  }
  CHECK(found);

  // mismatched seams are rejected
  ModuliPoint bad = random_point(sq, 99, 0.2);
  CHECK_THROWS_AS(compose(p, 1, bad, 3), std::invalid_argument);
}

TEST_CASE("Lu-Weinstein groupoid axioms on the square") {
  for (const char* name : {"abelian_double", "sl2c_iwasawa"}) {
    Backend b = make_backend(name, 1);
    CAPTURE(name);
    ColoredPolygon sq = builtin_surface("square", b);
    ModuliPoint p = random_point(sq, 31, 0.2);
    ModuliPoint q = random_point_with_fixed_slot(sq, 32, 0.2, 3, lw_source(p));
    ModuliPoint r = random_point_with_fixed_slot(sq, 33, 0.2, 3, lw_source(q));

    ModuliPoint left = compose(compose(p, 1, q, 3).point, 1, r, 3).point;
    ModuliPoint right = compose(p, 1, compose(q, 1, r, 3).point, 3).point;
    CHECK(point_distance_up_to_rotation(left, right) <= 1e-10);

    ModuliPoint ru = compose(p, 1, lw_unit(sq, lw_source(p)), 3).point;
    CHECK(point_distance_up_to_rotation(ru, p) <= 1e-10);
    ModuliPoint lu = compose(lw_unit(sq, lw_target(p)), 1, p, 3).point;
    CHECK(point_distance_up_to_rotation(lu, p) <= 1e-10);

    ModuliPoint inv = lw_inverse(p);
    CHECK(constraint_residual(inv).norm() <= 1e-12);
    ModuliPoint unit = compose(p, 1, inv, 3).point;
    CHECK(point_distance_up_to_rotation(unit, lw_unit(sq, lw_target(p))) <= 1e-10);
  }
}

TEST_CASE("graphs of composition are Lagrangian") {
  // product gluing, abelian: isotropy is exact linear algebra
  Backend ab = make_backend("abelian_double", 1);
  ColoredPolygon sq_ab = builtin_surface("square", ab);
  ModuliPoint p = random_point(sq_ab, 41, 0.2);
  ModuliPoint q = random_point_with_fixed_slot(sq_ab, 42, 0.2, 3, lw_source(p));
  LagrangianGraphReport g = check_lagrangian_graph(p, 1, q, 3);
  CHECK(g.dims_ok);
  CHECK(g.isotropy_residual <= 1e-12);

  // product gluing, sl2c
  Backend sl = make_backend("sl2c_iwasawa");
  ColoredPolygon sq = builtin_surface("square", sl);
  ModuliPoint ps = random_point(sq, 43, 0.2);
  ModuliPoint qs = random_point_with_fixed_slot(sq, 44, 0.2, 3, lw_source(ps));
  LagrangianGraphReport gs = check_lagrangian_graph(ps, 1, qs, 3);
  CHECK(gs.dims_ok);
  CHECK(gs.expected_dim == 9);
  CHECK(gs.isotropy_residual <= 1e-8);

  // module gluing: r/b/v square acted on by the square along r
  ColoredPolygon rbv = builtin_surface("gamma11", sl);
  ModuliPoint pm = random_point(rbv, 45, 0.2);
  ModuliPoint qm = random_point_with_fixed_slot(
      sq, 46, 0.2, 2, pm.holonomy[pm.layout.side_slot[0]]);
  LagrangianGraphReport gm = check_lagrangian_graph(pm, 0, qm, 2);
  CHECK(gm.dims_ok);
  CHECK(gm.isotropy_residual <= 1e-8);
}
