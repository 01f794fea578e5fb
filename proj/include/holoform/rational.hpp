#ifndef HOLOFORM_RATIONAL_HPP
#define HOLOFORM_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "holoform/linalg.hpp"

namespace holoform {

using Rat = mpq_class;
using Int = mpz_class;

/// Dense rational matrix, row major. Small sizes only; all arithmetic exact.
struct QMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}

  Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static QMat identity(int n);
  bool operator==(const QMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

QMat operator+(const QMat& x, const QMat& y);
QMat operator-(const QMat& x, const QMat& y);
QMat operator-(const QMat& x);
QMat operator*(const QMat& x, const QMat& y);
QMat operator*(const Rat& s, const QMat& x);
QMat transpose(const QMat& x);

int qrank(QMat x);
/// Inverse of a square matrix; throws std::domain_error when singular.
QMat qinverse(const QMat& x);
/// Solves a x = rhs for square invertible a.
QMat qsolve(const QMat& a, const QMat& rhs);
bool is_skew(const QMat& x);
bool is_integer_matrix(const QMat& x);

Mat to_float(const QMat& x);
Rat rat_from_string(const std::string& s);

/// Dense integer matrix (row major).
struct ZMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  ZMat() = default;
  ZMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Int(0)) {}
  Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static ZMat identity(int n);
  bool operator==(const ZMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

QMat to_rational(const ZMat& x);

/// Basis of {v in Z^cols : a v = 0}, columns of the result, via column
/// Hermite reduction with a unimodular transform.
ZMat integer_kernel(const ZMat& a);

/// Canonical (row-style Hermite) basis of the lattice spanned by the rows.
/// Pivots positive, entries above pivots reduced; zero rows dropped.
ZMat hermite_row_basis(ZMat gens);

}  // namespace holoform

#endif
