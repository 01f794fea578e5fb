#ifndef HOLOFORM_EXT_JET_HPP
#define HOLOFORM_EXT_JET_HPP

#include "holoform/lie_algebra.hpp"

namespace holoform {

/// Jet-level avatar of a pair (g, omega) in the central extension of the
/// group by closed 2-forms, evaluated along m chart directions:
/// `value` is the group element, `dlog` the left-trivialized first
/// derivatives (columns = directions), `form` the 2-form on direction pairs.
struct ExtJet {
  Mat value;
  Mat dlog;  // dim x m
  Mat form;  // m x m, skew
};

ExtJet ext_identity(const QuadraticLieAlgebra& g, int m);

/// Product law: values multiply, dlog composes by the left-trivialized
/// product rule, and the form picks up the cross term
/// (1/2) < g1^{-1} dg1 ^ dg2 g2^{-1} >.
ExtJet ext_mul(const QuadraticLieAlgebra& g, const ExtJet& a, const ExtJet& b);

/// (g, omega)^{-1} = (g^{-1}, -omega).
ExtJet ext_inv(const QuadraticLieAlgebra& g, const ExtJet& a);

}  // namespace holoform

#endif
