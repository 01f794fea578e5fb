#include "holoform/lie_algebra.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>

namespace holoform {

namespace {

Vec flatten(const Mat& m) {
  return Eigen::Map<const Vec>(m.data(), m.size());
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

}  // namespace

QuadraticLieAlgebra::QuadraticLieAlgebra(std::string name, std::vector<Mat> basis, Mat metric)
    : name_(std::move(name)), basis_(std::move(basis)), metric_(std::move(metric)) {
  if (basis_.empty()) throw std::invalid_argument("lie algebra: empty basis");
  const int d = dim();
  const int n = rep_size();
  for (const Mat& e : basis_)
    if (e.rows() != n || e.cols() != n)
      throw std::invalid_argument("lie algebra: basis matrices of unequal size");
  if (metric_.rows() != d || metric_.cols() != d)
    throw std::invalid_argument("lie algebra: metric dimension mismatch");
  if (max_abs(metric_ - metric_.transpose()) > 1e-12)
    throw std::invalid_argument("lie algebra: metric not symmetric");
  if (std::abs(metric_.determinant()) < 1e-12)
    throw std::invalid_argument("lie algebra: metric degenerate");

  basis_flat_.resize(n * n, d);
  for (int i = 0; i < d; ++i) basis_flat_.col(i) = flatten(basis_[i]);
  if (rank_svd(basis_flat_) != d)
    throw std::invalid_argument("lie algebra: basis matrices linearly dependent");
  flat_cod_.compute(basis_flat_);

  // structure constants from matrix commutators
  ad_basis_.assign(d, Mat::Zero(d, d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double res = 0.0;
      Vec c = coords(commutator(basis_[i], basis_[j]), &res);
      if (res > kMembershipTol)
        throw std::invalid_argument("lie algebra: basis not closed under commutator");
      ad_basis_[i].col(j) = c;
    }
  }
}

Mat QuadraticLieAlgebra::hat(const Vec& x) const {
  if (x.size() != dim()) throw std::invalid_argument("hat: dimension mismatch");
  Mat m = Mat::Zero(rep_size(), rep_size());
  for (int i = 0; i < dim(); ++i) m += x(i) * basis_[i];
  return m;
}

Vec QuadraticLieAlgebra::coords(const Mat& m, double* residual) const {
  Vec f = flatten(m);
  Vec c = flat_cod_.solve(f);
  if (residual) {
    const double scale = std::max(1.0, f.norm());
    *residual = (basis_flat_ * c - f).norm() / scale;
  }
  return c;
}

Vec QuadraticLieAlgebra::coords_checked(const Mat& m) const {
  double res = 0.0;
  Vec c = coords(m, &res);
  if (res > kMembershipTol)
    throw std::domain_error("coords: matrix left the algebra representation (residual " +
                            std::to_string(res) + ")");
  return c;
}

Vec QuadraticLieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw std::invalid_argument("bracket: dimension mismatch");
  Mat adx = Mat::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) adx += x(i) * ad_basis_[i];
  return adx * y;
}

double QuadraticLieAlgebra::inner(const Vec& x, const Vec& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw std::invalid_argument("inner: dimension mismatch");
  return x.dot(metric_ * y);
}

double QuadraticLieAlgebra::eta3(const Vec& x, const Vec& y, const Vec& z) const {
  return inner(bracket(x, y), z);
}

GroupElement QuadraticLieAlgebra::identity() const {
  return {Mat::Identity(rep_size(), rep_size())};
}

GroupElement QuadraticLieAlgebra::mul(const GroupElement& a, const GroupElement& b) const {
  return {a.matrix * b.matrix};
}

GroupElement QuadraticLieAlgebra::inverse(const GroupElement& g) const {
  return {g.matrix.inverse()};
}

GroupElement QuadraticLieAlgebra::exp(const Vec& x) const { return {hat(x).exp()}; }

Vec QuadraticLieAlgebra::log(const GroupElement& g) const {
  const Mat& m = g.matrix;
  if (m.rows() != rep_size() || m.cols() != rep_size())
    throw std::invalid_argument("log: representation size mismatch");
  const Mat n = m - Mat::Identity(rep_size(), rep_size());
  if (n.norm() <= 0.5) {
    // near-identity series: full machine accuracy where the constraint
    // residuals live (the Schur-based log loses ~1e-10 absolute here)
    Mat term = n;
    Mat sum = n;
    for (int k = 2; k <= 120; ++k) {
      term = term * n;
      sum += (k % 2 == 0 ? -1.0 : 1.0) / k * term;
      if (term.norm() / k < 1e-18 * std::max(1.0, sum.norm())) break;
    }
    return coords_checked(sum);
  }
  // Principal branch: no eigenvalue on the closed negative real axis. The
  // sampling scales keep points well inside; this check makes the failure
  // mode explicit instead of silently wrapping.
  Eigen::EigenSolver<Mat> es(m, /*computeEigenvectors=*/false);
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const std::complex<double> ev = es.eigenvalues()(i);
    if (std::abs(ev) < 1e-14)
      throw std::domain_error("log: singular matrix");
    if (ev.real() < 0.0 && std::abs(ev.imag()) <= 1e-12 * std::abs(ev))
      throw std::domain_error("log: eigenvalue on the negative real axis, outside the principal branch");
  }
  Mat l = m.log();
  return coords_checked(l);
}

Vec QuadraticLieAlgebra::ad(const GroupElement& g, const Vec& x) const {
  Mat conj = g.matrix * hat(x) * g.matrix.inverse();
  return coords_checked(conj);
}

Mat QuadraticLieAlgebra::ad_matrix(const GroupElement& g) const {
  Mat ginv = g.matrix.inverse();
  Mat out(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    out.col(i) = coords_checked(g.matrix * basis_[i] * ginv);
  return out;
}

double QuadraticLieAlgebra::jacobi_residual() const {
  const int d = dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        Vec ei = Vec::Unit(d, i), ej = Vec::Unit(d, j), ek = Vec::Unit(d, k);
        Vec r = bracket(ei, bracket(ej, ek)) + bracket(ej, bracket(ek, ei)) +
                bracket(ek, bracket(ei, ej));
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
      }
  return worst;
}

double QuadraticLieAlgebra::metric_invariance_residual() const {
  const int d = dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        Vec ei = Vec::Unit(d, i), ej = Vec::Unit(d, j), ek = Vec::Unit(d, k);
        worst = std::max(worst,
                         std::abs(inner(bracket(ei, ej), ek) + inner(ej, bracket(ei, ek))));
      }
  return worst;
}

bool is_lagrangian(const QuadraticLieAlgebra& g, const Mat& span, SubalgebraReport* report) {
  SubalgebraReport rep;
  const int k = static_cast<int>(span.rows());
  rep.half_dimensional = (2 * k == g.dim()) && (rank_svd(span) == k);

  Mat gram = span * g.metric() * span.transpose();
  rep.isotropy_residual = max_abs(gram);
  const double scale = std::max(1.0, operator_norm(span));
  rep.isotropic = rep.isotropy_residual <= 1e-10 * scale * scale;

  // closure: [h_i, h_j] must lie in the row space
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(span.transpose());
  double worst = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      Vec br = g.bracket(span.row(i).transpose(), span.row(j).transpose());
      Vec c = cod.solve(br);
      Vec resid = span.transpose() * c - br;
      const double denom = std::max(1.0, br.norm());
      worst = std::max(worst, resid.norm() / denom);
    }
  rep.closure_residual = worst;
  rep.closed_under_bracket = worst <= 1e-10;

  if (report) *report = rep;
  return rep.pass();
}

bool are_transverse(const QuadraticLieAlgebra& g, const Mat& span1, const Mat& span2) {
  Mat stacked(span1.rows() + span2.rows(), g.dim());
  stacked << span1, span2;
  return rank_svd(stacked) == g.dim();
}

Mat orthonormalize_rows(const Mat& span) {
  Eigen::HouseholderQR<Mat> qr(span.transpose());
  Mat q = qr.householderQ() * Mat::Identity(span.cols(), span.rows());
  // fix signs for determinism: make the largest entry of each column positive
  for (int j = 0; j < q.cols(); ++j) {
    int imax = 0;
    q.col(j).cwiseAbs().maxCoeff(&imax);
    if (q(imax, j) < 0) q.col(j) = -q.col(j);
  }
  return q.transpose();
}

const Mat& Backend::span(const std::string& key) const {
  auto it = spans.find(key);
  if (it == spans.end())
    throw std::invalid_argument("backend '" + name + "' has no subalgebra '" + key + "'");
  return it->second;
}

namespace {

// --- abelian double -------------------------------------------------------
// V + V* with the hyperbolic pairing; representation by commuting nilpotents
// (one slot of the first matrix row per coordinate) so exp is I + X and the
// group law is coordinate addition.
Backend make_abelian_double(int n) {
  if (n < 1) throw std::invalid_argument("abelian_double: n must be >= 1");
  const int d = 2 * n;
  const int rep = d + 1;
  std::vector<Mat> basis;
  for (int i = 0; i < d; ++i) {
    Mat e = Mat::Zero(rep, rep);
    e(0, i + 1) = 1.0;
    basis.push_back(e);
  }
  Mat metric = Mat::Zero(d, d);
  metric.block(0, n, n, n) = Mat::Identity(n, n);
  metric.block(n, 0, n, n) = Mat::Identity(n, n);

  Backend b;
  b.name = "abelian_double(" + std::to_string(n) + ")";
  b.algebra = std::make_shared<QuadraticLieAlgebra>(b.name, basis, metric);
  Mat r = Mat::Zero(n, d), bb = Mat::Zero(n, d);
  r.block(0, 0, n, n) = Mat::Identity(n, n);
  bb.block(0, n, n, n) = Mat::Identity(n, n);
  b.spans["r"] = r;
  b.spans["b"] = bb;
  if (n % 2 == 0) {
    // v = graph of the standard invertible skew block matrix
    Mat theta = Mat::Zero(n, n);
    for (int i = 0; i + 1 < n; i += 2) {
      theta(i, i + 1) = 0.5;
      theta(i + 1, i) = -0.5;
    }
    Mat v = Mat::Zero(n, d);
    v.block(0, 0, n, n) = theta.transpose();  // row j carries theta * e_j
    v.block(0, n, n, n) = Mat::Identity(n, n);
    b.spans["v"] = orthonormalize_rows(v);
  }
  return b;
}

// --- cotangent double h |x h* --------------------------------------------
// su(2) structure constants [t_i,t_j] = eps_{ijk} t_k.
std::vector<Mat> su2_ad() {
  std::vector<Mat> ad(3, Mat::Zero(3, 3));
  auto set = [&](int i, int j, int k, double s) { ad[i](k, j) = s; };
  // [t0,t1]=t2, [t1,t2]=t0, [t2,t0]=t1
  set(0, 1, 2, 1);
  set(1, 0, 2, -1);
  set(1, 2, 0, 1);
  set(2, 1, 0, -1);
  set(2, 0, 1, 1);
  set(0, 2, 1, -1);
  return ad;
}

Backend make_cotangent_double(const std::string& h) {
  if (h != "su2" && h != "su(2)")
    throw std::invalid_argument("cotangent_double: unsupported base algebra '" + h + "'");
  const int hd = 3;
  const int d = 2 * hd;
  const int rep = hd + 1;
  std::vector<Mat> adh = su2_ad();
  std::vector<Mat> basis;
  // h part acts on h* by the coadjoint action -ad^T
  for (int i = 0; i < hd; ++i) {
    Mat e = Mat::Zero(rep, rep);
    e.block(0, 0, hd, hd) = -adh[i].transpose();
    basis.push_back(e);
  }
  for (int j = 0; j < hd; ++j) {
    Mat e = Mat::Zero(rep, rep);
    e(j, hd) = 1.0;
    basis.push_back(e);
  }
  Mat metric = Mat::Zero(d, d);
  metric.block(0, hd, hd, hd) = Mat::Identity(hd, hd);
  metric.block(hd, 0, hd, hd) = Mat::Identity(hd, hd);

  Backend b;
  b.name = "cotangent_double(su2)";
  b.algebra = std::make_shared<QuadraticLieAlgebra>(b.name, basis, metric);
  Mat r = Mat::Zero(hd, d), bb = Mat::Zero(hd, d);
  r.block(0, 0, hd, hd) = Mat::Identity(hd, hd);
  bb.block(0, hd, hd, hd) = Mat::Identity(hd, hd);
  b.spans["r"] = r;
  b.spans["b"] = bb;
  // v = graph of the coboundary cocycle x -> ad*_x xi with xi = t1*.
  // Lagrangian and transverse to b (never to r: the stabilizer of xi is
  // in its kernel), which is what the r/b/v square needs.
  Vec xi = Vec::Unit(hd, 0);
  Mat v = Mat::Zero(hd, d);
  for (int i = 0; i < hd; ++i) {
    v(i, i) = 1.0;
    Vec cov = -adh[i].transpose() * xi;
    for (int j = 0; j < hd; ++j) v(i, hd + j) = cov(j);
  }
  b.spans["v"] = orthonormalize_rows(v);
  return b;
}

// --- sl(2,C) with the Iwasawa Manin triple --------------------------------
using CMat = Eigen::Matrix2cd;

Mat realify(const CMat& m) {
  Mat r(4, 4);
  Mat re = m.real(), im = m.imag();
  r.block(0, 0, 2, 2) = re;
  r.block(0, 2, 2, 2) = -im;
  r.block(2, 0, 2, 2) = im;
  r.block(2, 2, 2, 2) = re;
  return r;
}

Backend make_sl2c_iwasawa() {
  using namespace std::complex_literals;
  CMat E, F, H;
  E << 0, 1, 0, 0;
  F << 0, 0, 1, 0;
  H << 1, 0, 0, -1;
  // basis: su(2) triple then the Borel triple (upper triangular, real diagonal)
  std::vector<CMat> cbasis = {E - F, 1i * (E + F), 1i * H, H, E, 1i * E};
  const int d = 6;
  std::vector<Mat> basis;
  for (const CMat& m : cbasis) basis.push_back(realify(m));
  // pairing <X,Y> = Im tr(XY); normalization constant fixed to 1
  Mat metric(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      metric(i, j) = (cbasis[i] * cbasis[j]).trace().imag();

  Backend b;
  b.name = "sl2c_iwasawa";
  b.algebra = std::make_shared<QuadraticLieAlgebra>(b.name, basis, metric);
  Mat r = Mat::Zero(3, d), bb = Mat::Zero(3, d);
  r.block(0, 0, 3, 3) = Mat::Identity(3, 3);
  bb.block(0, 3, 3, 3) = Mat::Identity(3, 3);
  b.spans["r"] = r;
  b.spans["b"] = bb;
  // Third Lagrangian: a conjugate of the imaginary-diagonal Borel
  // span{iH, E, iE}. Any conjugate with a flag distinct from e1 is
  // transverse to b (two distinct flags only share nilpotents with two
  // invariant lines, i.e. 0). No Lagrangian subalgebra of sl(2,C) is
  // transverse to su(2) as well, so surfaces with r-v corners do not run
  // over this backend. The conjugating element is arbitrary but frozen.
  Mat vraw(3, d);
  vraw.row(0) = Vec::Unit(d, 2).transpose();  // iH
  vraw.row(1) = Vec::Unit(d, 4).transpose();  // E
  vraw.row(2) = Vec::Unit(d, 5).transpose();  // iE
  Vec z0 = Vec::Zero(d);
  z0(0) = 0.5;  // E - F direction: moves the flag off the e1 line
  Mat adg = b.algebra->ad_matrix(b.algebra->exp(z0));
  Mat v = orthonormalize_rows(vraw * adg.transpose());
  if (!is_lagrangian(*b.algebra, v) || !are_transverse(*b.algebra, v, bb))
    throw std::logic_error("sl2c_iwasawa: chosen v subalgebra failed its certificates");
  b.spans["v"] = v;
  return b;
}

}  // namespace

Backend make_backend(const std::string& name, int n, const std::string& h) {
  if (name == "abelian_double") return make_abelian_double(n);
  if (name == "cotangent_double") return make_cotangent_double(h);
  if (name == "sl2c_iwasawa") return make_sl2c_iwasawa();
  throw std::invalid_argument("unknown backend '" + name + "'");
}

}  // namespace holoform
