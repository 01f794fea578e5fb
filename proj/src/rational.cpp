#include "holoform/rational.hpp"

#include <stdexcept>

namespace holoform {

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat operator+(const QMat& x, const QMat& y) {
  QMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

QMat operator-(const QMat& x, const QMat& y) {
  QMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

QMat operator-(const QMat& x) {
  QMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = -x.a[i];
  return r;
}

QMat operator*(const QMat& x, const QMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("QMat: dimension mismatch");
  QMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return r;
}

QMat operator*(const Rat& s, const QMat& x) {
  QMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = s * x.a[i];
  return r;
}

QMat transpose(const QMat& x) {
  QMat r(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
  return r;
}

namespace {

// Gaussian elimination; returns rank, records pivot columns.
int rref_inplace(QMat& m, std::vector<int>* pivots = nullptr) {
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    Rat inv = 1 / m.at(rank, col);
    for (int j = 0; j < m.cols; ++j) m.at(rank, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == rank || m.at(i, col) == 0) continue;
      Rat f = m.at(i, col);
      for (int j = 0; j < m.cols; ++j) m.at(i, j) -= f * m.at(rank, j);
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

}  // namespace

int qrank(QMat x) { return rref_inplace(x); }

QMat qinverse(const QMat& x) {
  if (x.rows != x.cols) throw std::invalid_argument("qinverse: not square");
  QMat aug(x.rows, 2 * x.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) aug.at(i, j) = x.at(i, j);
    aug.at(i, x.cols + i) = 1;
  }
  if (rref_inplace(aug) != x.rows) throw std::domain_error("qinverse: singular matrix");
  QMat r(x.rows, x.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r.at(i, j) = aug.at(i, x.cols + j);
  return r;
}

QMat qsolve(const QMat& a, const QMat& rhs) { return qinverse(a) * rhs; }

bool is_skew(const QMat& x) {
  if (x.rows != x.cols) return false;
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      if (x.at(i, j) != -x.at(j, i)) return false;
  return true;
}

bool is_integer_matrix(const QMat& x) {
  for (const Rat& q : x.a)
    if (q.get_den() != 1) return false;
  return true;
}

Mat to_float(const QMat& x) {
  Mat r(x.rows, x.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r(i, j) = x.at(i, j).get_d();
  return r;
}

Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("cannot parse rational '" + s + "'");
  q.canonicalize();
  return q;
}

ZMat ZMat::identity(int n) {
  ZMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat to_rational(const ZMat& x) {
  QMat r(x.rows, x.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r.at(i, j) = Rat(x.at(i, j));
  return r;
}

ZMat integer_kernel(const ZMat& a) {
  // column Hermite reduction tracking a unimodular transform
  ZMat h = a;
  ZMat u = ZMat::identity(a.cols);
  auto col_swap = [&](ZMat& m, int c1, int c2) {
    for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, c1), m.at(i, c2));
  };
  auto col_axpy = [&](ZMat& m, int dst, int src, const Int& q) {
    for (int i = 0; i < m.rows; ++i) m.at(i, dst) -= q * m.at(i, src);
  };
  auto col_neg = [&](ZMat& m, int c) {
    for (int i = 0; i < m.rows; ++i) m.at(i, c) = -m.at(i, c);
  };

  int lead = 0;
  for (int row = 0; row < a.rows && lead < a.cols; ++row) {
    // reduce row entries right of `lead` to a single nonzero at `lead`
    while (true) {
      int best = -1;
      for (int c = lead; c < a.cols; ++c) {
        if (h.at(row, c) == 0) continue;
        if (best < 0 || abs(h.at(row, c)) < abs(h.at(row, best))) best = c;
      }
      if (best < 0) break;  // row already zero from `lead` on
      if (best != lead) {
        col_swap(h, lead, best);
        col_swap(u, lead, best);
      }
      bool clean = true;
      for (int c = lead + 1; c < a.cols; ++c) {
        if (h.at(row, c) == 0) continue;
        Int q = h.at(row, c) / h.at(row, lead);
        col_axpy(h, c, lead, q);
        col_axpy(u, c, lead, q);
        if (h.at(row, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (lead < a.cols && h.at(row, lead) != 0) {
      if (h.at(row, lead) < 0) {
        col_neg(h, lead);
        col_neg(u, lead);
      }
      ++lead;
    }
  }

  // kernel basis: transform columns whose h-column is zero
  std::vector<int> zero_cols;
  for (int c = 0; c < a.cols; ++c) {
    bool zero = true;
    for (int i = 0; i < a.rows && zero; ++i) zero = (h.at(i, c) == 0);
    if (zero) zero_cols.push_back(c);
  }
  ZMat kernel(a.cols, static_cast<int>(zero_cols.size()));
  for (size_t k = 0; k < zero_cols.size(); ++k)
    for (int i = 0; i < a.cols; ++i) kernel.at(i, static_cast<int>(k)) = u.at(i, zero_cols[k]);
  return kernel;
}

ZMat hermite_row_basis(ZMat gens) {
  int row = 0;
  for (int col = 0; col < gens.cols && row < gens.rows; ++col) {
    while (true) {
      int best = -1;
      for (int i = row; i < gens.rows; ++i) {
        if (gens.at(i, col) == 0) continue;
        if (best < 0 || abs(gens.at(i, col)) < abs(gens.at(best, col))) best = i;
      }
      if (best < 0) break;
      if (best != row)
        for (int j = 0; j < gens.cols; ++j) std::swap(gens.at(best, j), gens.at(row, j));
      bool clean = true;
      for (int i = row + 1; i < gens.rows; ++i) {
        if (gens.at(i, col) == 0) continue;
        Int q = gens.at(i, col) / gens.at(row, col);
        for (int j = 0; j < gens.cols; ++j) gens.at(i, j) -= q * gens.at(row, j);
        if (gens.at(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (gens.at(row, col) != 0) {
      if (gens.at(row, col) < 0)
        for (int j = 0; j < gens.cols; ++j) gens.at(row, j) = -gens.at(row, j);
      // reduce entries above the pivot
      for (int i = 0; i < row; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), gens.at(i, col).get_mpz_t(), gens.at(row, col).get_mpz_t());
        if (q != 0)
          for (int j = 0; j < gens.cols; ++j) gens.at(i, j) -= q * gens.at(row, j);
      }
      ++row;
    }
  }
  ZMat out(row, gens.cols);
  for (int i = 0; i < row; ++i)
    for (int j = 0; j < gens.cols; ++j) out.at(i, j) = gens.at(i, j);
  return out;
}

}  // namespace holoform
