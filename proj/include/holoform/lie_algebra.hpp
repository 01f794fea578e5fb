#ifndef HOLOFORM_LIE_ALGEBRA_HPP
#define HOLOFORM_LIE_ALGEBRA_HPP

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "holoform/linalg.hpp"

namespace holoform {

/// Element of the connected matrix group generated by exp of the algebra.
struct GroupElement {
  Mat matrix;
};

/// Matrix Lie algebra with an Ad-invariant inner product of arbitrary
/// signature. Coordinates are fixed once by `basis`; projections back to
/// coordinates go through the pseudo-inverse of the basis-flattening map.
class QuadraticLieAlgebra {
 public:
  QuadraticLieAlgebra(std::string name, std::vector<Mat> basis, Mat metric);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int rep_size() const { return static_cast<int>(basis_[0].rows()); }
  const Mat& metric() const { return metric_; }
  const std::vector<Mat>& basis() const { return basis_; }

  /// Coordinates -> representing matrix.
  Mat hat(const Vec& x) const;
  /// Representing matrix -> coordinates (least squares). The relative
  /// projection residual is written to *residual when given; a residual
  /// above kMembershipTol means the matrix left the representation.
  Vec coords(const Mat& m, double* residual = nullptr) const;
  Vec coords_checked(const Mat& m) const;

  Vec bracket(const Vec& x, const Vec& y) const;
  double inner(const Vec& x, const Vec& y) const;
  /// Invariant 3-form eta(x,y,z) = <[x,y],z>.
  double eta3(const Vec& x, const Vec& y, const Vec& z) const;

  GroupElement identity() const;
  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& g) const;

  GroupElement exp(const Vec& x) const;
  /// Principal-branch logarithm, back in algebra coordinates. Throws
  /// std::domain_error when an eigenvalue sits on the closed negative real
  /// axis (outside the principal branch).
  Vec log(const GroupElement& g) const;

  /// Ad(g) x = g x g^{-1} in algebra coordinates.
  Vec ad(const GroupElement& g, const Vec& x) const;
  /// Matrix of Ad(g) on coordinates, dim x dim.
  Mat ad_matrix(const GroupElement& g) const;

  // Residuals over all basis triples; used by the self-test suites.
  double jacobi_residual() const;
  double metric_invariance_residual() const;

  static constexpr double kMembershipTol = 1e-9;

 private:
  std::string name_;
  std::vector<Mat> basis_;
  Mat metric_;
  Mat basis_flat_;                             // N^2 x dim
  Eigen::CompleteOrthogonalDecomposition<Mat> flat_cod_;
  std::vector<Mat> ad_basis_;                  // ad(e_i) on coordinates
};

using AlgebraPtr = std::shared_ptr<const QuadraticLieAlgebra>;

struct SubalgebraReport {
  bool isotropic = false;
  bool half_dimensional = false;
  bool closed_under_bracket = false;
  double isotropy_residual = 0.0;
  double closure_residual = 0.0;
  bool pass() const { return isotropic && half_dimensional && closed_under_bracket; }
};

/// Isotropy + half dimension + closure under the bracket.
bool is_lagrangian(const QuadraticLieAlgebra& g, const Mat& span,
                   SubalgebraReport* report = nullptr);

/// rank [span1; span2] == dim g.
bool are_transverse(const QuadraticLieAlgebra& g, const Mat& span1, const Mat& span2);

/// Algebra together with its named Lagrangian subalgebras ("r", "b" and,
/// when constructible, "v"). Span rows are orthonormalized.
struct Backend {
  std::string name;
  AlgebraPtr algebra;
  std::map<std::string, Mat> spans;

  const Mat& span(const std::string& key) const;
  bool has_span(const std::string& key) const { return spans.count(key) > 0; }
};

/// Catalog of Manin triples: abelian_double(n), cotangent_double(h) with
/// h in {su2}, and sl2c_iwasawa. Throws std::invalid_argument for unknown
/// names or parameters.
Backend make_backend(const std::string& name, int n = 0, const std::string& h = "su2");

/// Orthonormalize the rows of a span (Euclidean Gram-Schmidt).
Mat orthonormalize_rows(const Mat& span);

}  // namespace holoform

#endif
