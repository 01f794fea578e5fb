#ifndef HOLOFORM_TORUS_MORITA_HPP
#define HOLOFORM_TORUS_MORITA_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "holoform/rational.hpp"
#include "holoform/surface.hpp"

namespace holoform {

/// Skew matrix driving the torus Poisson structure. `exact` carries rational
/// entries for the lattice/bivector pipeline; float mode only supports the
/// numeric cross-checks.
struct SkewTheta {
  int n = 0;
  bool exact = false;
  QMat q;  // valid when exact
  Mat f;   // always valid

  static SkewTheta from_rationals(const QMat& q);
  static SkewTheta from_float(const Mat& f);
};

struct GraphReport {
  Mat span;  // n x 2n rows (theta e_j, e_j) in abelian double coordinates
  bool lagrangian = false;
  bool transverse_r = false;
  bool transverse_b = false;
};

/// The Lagrangian v = graph(theta) inside abelian_double(n).
GraphReport lagrangian_graph(const Backend& abelian, const SkewTheta& theta);

/// Canonical basis (rows) of {k in Z^n : theta k in Z^n}. Exact mode only;
/// full rank for every rational theta, so a nonempty basis certifies that
/// the graph meets Z^{2n} away from 0.
ZMat graph_lattice_intersection(const SkewTheta& theta);

/// Brute-force search |k|_inf <= bound for theta k integral (tolerance for
/// float theta); the diagnostic surrogate for irrational inputs.
std::vector<std::vector<long>> central_exponents_bounded(const Mat& theta_float, long bound,
                                                         double tol = 1e-9);

/// Flat torus R^{2m}/Z^k with a constant symplectic form, exact entries.
struct AffineSymplecticTorus {
  int param_dim = 0;
  ZMat lattice;  // rows = lattice generators in parameter coordinates
  QMat form;     // param_dim x param_dim skew, nondegenerate
};

/// Moduli space of one Gamma surface over the torus backend, solved exactly:
/// free parameter blocks (one per designated free arc, n coordinates each),
/// the affine solution expressing every arc lift, and the leg maps read off
/// the gluing pictures.
struct GammaModel {
  std::string name;
  std::vector<Side> word;
  AffineSymplecticTorus torus;
  std::vector<int> free_arcs;               // word indices, ascending
  QMat solution;                            // (n * #arcs) x param_dim, arc blocks in word order
  std::vector<int> source_arcs, target_arcs;  // word indices of the leg arcs
  QMat source_map, target_map;              // leg differentials
};

struct GammaSpaces {
  GammaModel g00, g01, g10, g11, g11_swap;
};

/// The Gamma quadruple (plus the color-swapped square carrying the R base).
/// Requires exact invertible theta.
GammaSpaces gamma_spaces(const SkewTheta& theta);

/// Constant bivector on the base: T Omega^{-1} T^T for a leg differential T
/// of full row rank.
QMat base_poisson(const GammaModel& gamma, const QMat& leg);

struct MoritaBivectors {
  QMat pi_r;  // base Poisson bivector of the R-based square
  QMat pi_b;  // base Poisson bivector of the B-based square
  int epsilon = 0;
  bool witnessed = false;  // pi_r == eps*theta and pi_b == eps*theta^{-1}, shared eps
};

MoritaBivectors morita_bivectors(const GammaSpaces& gs, const SkewTheta& theta);

/// (1/planck) * form evaluated on all pairs of lattice generators integral.
bool integrality_check(const AffineSymplecticTorus& torus, const Rat& planck);

struct SurjectivityReport {
  int rank_g01 = 0, expected_g01 = 0;
  int rank_g10 = 0, expected_g10 = 0;
  bool pass = false;
};

/// Rank check of the leg maps Gamma01 -> M1 and Gamma10 -> M0.
SurjectivityReport morita_surjectivity(const GammaModel& g01, const GammaModel& g10);

// --- quantum torus ---------------------------------------------------------

/// Finite linear combination of monomials W(p), p in Z^n.
struct TorusAlgebraElement {
  int n = 0;
  std::map<std::vector<long>, std::complex<double>> terms;
};

TorusAlgebraElement qt_monomial(const std::vector<long>& p,
                                std::complex<double> coeff = 1.0);
TorusAlgebraElement qt_unit(int n);

/// W(p) W(q) = exp(pi i p^T theta q) W(p+q), extended bilinearly.
TorusAlgebraElement qt_multiply(const TorusAlgebraElement& a, const TorusAlgebraElement& b,
                                const SkewTheta& theta);

/// W(p)^{-1} = W(-p).
TorusAlgebraElement qt_monomial_inverse(const TorusAlgebraElement& monomial);

double qt_distance(const TorusAlgebraElement& a, const TorusAlgebraElement& b);

/// Generators of {a : theta a in Z^n} (monomial exponents of central W(a)).
/// Exact mode only.
ZMat qt_center(const SkewTheta& theta);

}  // namespace holoform

#endif
