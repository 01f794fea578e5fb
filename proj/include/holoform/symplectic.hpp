#ifndef HOLOFORM_SYMPLECTIC_HPP
#define HOLOFORM_SYMPLECTIC_HPP

#include <map>
#include <optional>

#include "holoform/ext_jet.hpp"
#include "holoform/moduli.hpp"

namespace holoform {

/// Jet of the contribution of word position i along tangent directions
/// (columns of `vectors`, parameter space). Reversed sides go through
/// ext_inv.
ExtJet side_jet(const ModuliPoint& pt, int i, const Mat& vectors);

/// Jet of the stored holonomy of word position i, ignoring the side's
/// orientation flag.
ExtJet side_jet_stored(const ModuliPoint& pt, int i, const Mat& vectors);

/// Folds the side jets in cyclic word order starting at `base`.
/// `form_perturbation` adds a skew matrix to the form component of chosen
/// occurrences (used by the cut 2-form cancellation check).
ExtJet fold_word(const ModuliPoint& pt, const Mat& vectors, int base = 0,
                 const std::map<int, Mat>* form_perturbation = nullptr);

/// Gram matrix of the symplectic form on the given tangent vectors, by the
/// holonomy-product formula. Asserts the folded value is the identity.
Mat omega_gram(const ModuliPoint& pt, const Mat& vectors, bool check_tangency = false,
               int base = 0, const std::map<int, Mat>* form_perturbation = nullptr);

/// omega on the orthonormal tangent basis (the m x m Gram matrix).
Mat omega_matrix(const ModuliPoint& pt, const Mat& basis);

// Closed-form evaluations of the worked examples, on two tangent vectors.
double closed_form_square_rb(const ModuliPoint& pt, const Vec& xi, const Vec& eta);
double closed_form_square_rbv(const ModuliPoint& pt, const Vec& xi, const Vec& eta);
double closed_form_triangle(const ModuliPoint& pt, const Vec& xi, const Vec& eta);
double closed_form_annulus(const ModuliPoint& pt, const Vec& xi, const Vec& eta);

/// Dispatch by builtin name; empty optional when no closed form exists.
std::optional<double> closed_form_by_name(const std::string& builtin, const ModuliPoint& pt,
                                          const Vec& xi, const Vec& eta);

struct ClosednessReport {
  double max_residual = 0.0;
  double h = 0.0;
  int directions = 0;
};

/// Finite-difference exterior derivative of omega in the chart at pt;
/// reports max |d omega| over coordinate triples.
ClosednessReport check_closed(const ModuliPoint& pt, const Mat& basis, double h = 1e-4);

/// Smallest singular value of the Gram matrix; asserts even dimension.
double check_nondegenerate(const ModuliPoint& pt, const Mat& basis);

/// Point on the cyclically rotated word, with the parameter permutation that
/// identifies the two presentations.
struct RotatedPresentation {
  ModuliPoint point;
  Mat param_map;  // new params <- old params
};
RotatedPresentation rotate_base(const ModuliPoint& pt, int shift);

/// The annulus re-cut along a homotopically different path: cut holonomy
/// g' = r1^{-1} g. Returns the new point and the tangent transport.
RotatedPresentation recut_annulus(const ModuliPoint& pt);

struct InvarianceReport {
  double rotation_residual = 0.0;
  double recut_residual = -1.0;  // -1 when the surface has no cut
};
InvarianceReport invariance_checks(const ModuliPoint& pt, const Mat& basis);

struct ComposeResult {
  ModuliPoint point;
  GlueResult glued;
};

/// Composition along a seam arc (same label, opposite orientation, matching
/// holonomies): point on the glued surface with merged arcs multiplied in
/// word order.
ComposeResult compose(const ModuliPoint& pt1, int a1, const ModuliPoint& pt2, int a2,
                      double seam_tol = 1e-10);

/// Pushforward of a tangent pair through compose.
Vec dcompose(const ModuliPoint& pt1, const ModuliPoint& pt2, const ComposeResult& cr,
             const Vec& xi1, const Vec& xi2);

struct LagrangianGraphReport {
  double isotropy_residual = 0.0;
  int graph_dim = 0;
  int expected_dim = 0;
  bool dims_ok = false;
};

/// Certifies that the graph of composition is Lagrangian: isotropy w.r.t.
/// (-omega1) + (-omega2) + omega12 and dimension exactly half the ambient.
LagrangianGraphReport check_lagrangian_graph(const ModuliPoint& pt1, int a1,
                                             const ModuliPoint& pt2, int a2);

// Groupoid structure of the r/b square (composition along the b-seam).
ModuliPoint lw_unit(const ColoredPolygon& square, const Mat& b_holonomy);
ModuliPoint lw_inverse(const ModuliPoint& pt);
Mat lw_source(const ModuliPoint& pt);  // b1 holonomy
Mat lw_target(const ModuliPoint& pt);  // b2 holonomy

/// Max distance between slot holonomies after aligning the words by cyclic
/// rotation; infinity when the words never align.
double point_distance_up_to_rotation(const ModuliPoint& a, const ModuliPoint& b);

}  // namespace holoform

#endif
