#include "holoform/ext_jet.hpp"

namespace holoform {

ExtJet ext_identity(const QuadraticLieAlgebra& g, int m) {
  return {Mat::Identity(g.rep_size(), g.rep_size()), Mat::Zero(g.dim(), m),
          Mat::Zero(m, m)};
}

ExtJet ext_mul(const QuadraticLieAlgebra& g, const ExtJet& a, const ExtJet& b) {
  if (a.dlog.cols() != b.dlog.cols())
    throw std::invalid_argument("ext_mul: direction count mismatch");
  Mat ad_b = g.ad_matrix({b.value});
  ExtJet out;
  out.value = a.value * b.value;
  out.dlog = ad_b.inverse() * a.dlog + b.dlog;
  Mat rho_b = ad_b * b.dlog;  // right-trivialized derivative of b
  Mat cross = a.dlog.transpose() * g.metric() * rho_b;
  out.form = a.form + b.form + 0.5 * (cross - cross.transpose());
  return out;
}

ExtJet ext_inv(const QuadraticLieAlgebra& g, const ExtJet& a) {
  ExtJet out;
  out.value = a.value.inverse();
  out.dlog = -(g.ad_matrix({a.value}) * a.dlog);
  out.form = -a.form;
  return out;
}

}  // namespace holoform
