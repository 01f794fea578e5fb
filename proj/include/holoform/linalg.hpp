#ifndef HOLOFORM_LINALG_HPP
#define HOLOFORM_LINALG_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace holoform {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Largest singular value of a general real matrix.
double operator_norm(const Mat& a);

/// Numerical rank from singular values, relative tolerance.
int rank_svd(const Mat& a, double tol_rel = 1e-10);

/// Orthonormal basis of the nullspace (columns), from the full SVD.
Mat nullspace_basis(const Mat& a, double tol_rel = 1e-10);

/// Minimal-norm least-squares solution of a x = b via the SVD pseudo-inverse.
Vec pinv_solve(const Mat& a, const Vec& b, double tol_rel = 1e-12);

double max_abs(const Mat& a);

/// Deterministic uniform sampler. Values are produced from the raw mt19937_64
/// stream so sequences are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  Vec uniform_vec(int n, double lo, double hi) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace holoform

#endif
