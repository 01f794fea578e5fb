#include "holoform/torus_morita.hpp"

#include <cmath>
#include <numbers>

namespace holoform {

SkewTheta SkewTheta::from_rationals(const QMat& q) {
  if (q.rows != q.cols) throw std::invalid_argument("theta must be square");
  if (!is_skew(q)) throw std::invalid_argument("theta must be skew-symmetric");
  SkewTheta t;
  t.n = q.rows;
  t.exact = true;
  t.q = q;
  t.f = to_float(q);
  return t;
}

SkewTheta SkewTheta::from_float(const Mat& f) {
  if (f.rows() != f.cols()) throw std::invalid_argument("theta must be square");
  if (max_abs(f + f.transpose()) > 1e-14 * std::max(1.0, max_abs(f)))
    throw std::invalid_argument("theta must be skew-symmetric");
  SkewTheta t;
  t.n = static_cast<int>(f.rows());
  t.exact = false;
  t.f = f;
  return t;
}

GraphReport lagrangian_graph(const Backend& abelian, const SkewTheta& theta) {
  const int n = theta.n;
  if (abelian.algebra->dim() != 2 * n)
    throw std::invalid_argument("lagrangian_graph: backend dimension mismatch");
  GraphReport rep;
  rep.span = Mat::Zero(n, 2 * n);
  rep.span.block(0, 0, n, n) = theta.f.transpose();  // row j = theta e_j
  rep.span.block(0, n, n, n) = Mat::Identity(n, n);
  rep.lagrangian = is_lagrangian(*abelian.algebra, rep.span);
  rep.transverse_r = are_transverse(*abelian.algebra, rep.span, abelian.span("r"));
  rep.transverse_b = are_transverse(*abelian.algebra, rep.span, abelian.span("b"));
  return rep;
}

ZMat graph_lattice_intersection(const SkewTheta& theta) {
  if (!theta.exact)
    throw std::invalid_argument("graph_lattice_intersection: exact mode required");
  const int n = theta.n;
  // common denominator d, integer numerator matrix N
  Int d = 1;
  for (const Rat& q : theta.q.a) d = lcm(d, q.get_den());
  ZMat a(n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat scaled = Rat(d) * theta.q.at(i, j);
      a.at(i, j) = scaled.get_num();
      if (i == j) a.at(i, n + j) = d;
    }
  // kernel of (k, m) -> N k + d m; project to the k block
  ZMat kernel = integer_kernel(a);
  ZMat gens(kernel.cols, n);
  for (int c = 0; c < kernel.cols; ++c)
    for (int i = 0; i < n; ++i) gens.at(c, i) = kernel.at(i, c);
  return hermite_row_basis(gens);
}

std::vector<std::vector<long>> central_exponents_bounded(const Mat& theta_float, long bound,
                                                         double tol) {
  const int n = static_cast<int>(theta_float.rows());
  std::vector<std::vector<long>> found;
  std::vector<long> k(n, -bound);
  while (true) {
    bool zero = true, integral = true;
    for (int i = 0; i < n; ++i) zero = zero && k[i] == 0;
    Vec kv(n);
    for (int i = 0; i < n; ++i) kv(i) = static_cast<double>(k[i]);
    Vec tk = theta_float * kv;
    for (int i = 0; i < n && integral; ++i)
      integral = std::abs(tk(i) - std::round(tk(i))) <= tol;
    if (!zero && integral) found.push_back(k);
    int pos = n - 1;
    while (pos >= 0 && k[pos] == bound) k[pos--] = -bound;
    if (pos < 0) break;
    ++k[pos];
  }
  return found;
}

namespace {

// Exact direction rows of one arc lift: r -> (x, 0), b -> (0, x),
// v -> (theta u, u).
QMat arc_directions(char label, const SkewTheta& theta) {
  const int n = theta.n;
  QMat d(n, 2 * n);
  for (int j = 0; j < n; ++j) {
    if (label == 'r') {
      d.at(j, j) = 1;
    } else if (label == 'b') {
      d.at(j, n + j) = 1;
    } else {  // v: row j = (theta e_j, e_j)
      for (int i = 0; i < n; ++i) d.at(j, i) = theta.q.at(i, j);
      d.at(j, n + j) = 1;
    }
  }
  return d;
}

struct GammaSpec {
  std::string name;
  std::vector<Side> word;
  std::vector<int> free_arcs;
  std::vector<int> source_arcs, target_arcs;
};

GammaModel build_gamma(const GammaSpec& spec, const SkewTheta& theta, const ZMat& windings_v) {
  const int n = theta.n;
  const int arcs = static_cast<int>(spec.word.size());
  GammaModel model;
  model.name = spec.name;
  model.word = spec.word;
  model.free_arcs = spec.free_arcs;
  model.source_arcs = spec.source_arcs;
  model.target_arcs = spec.target_arcs;

  std::vector<QMat> dirs;
  for (const Side& s : spec.word) dirs.push_back(arc_directions(s.label[0], theta));

  // constraint sum of signed lifts = 0 in R^{2n}
  std::vector<int> dependents;
  for (int i = 0; i < arcs; ++i)
    if (std::find(spec.free_arcs.begin(), spec.free_arcs.end(), i) == spec.free_arcs.end())
      dependents.push_back(i);
  const int nfree = static_cast<int>(spec.free_arcs.size());
  const int m = n * nfree;

  QMat a_free(2 * n, m), a_dep(2 * n, n * static_cast<int>(dependents.size()));
  auto fill = [&](QMat& dst, const std::vector<int>& arcsel) {
    for (size_t k = 0; k < arcsel.size(); ++k) {
      const int i = arcsel[k];
      const Rat sign = spec.word[i].reversed ? Rat(-1) : Rat(1);
      QMat dt = transpose(dirs[i]);  // 2n x n
      for (int r = 0; r < 2 * n; ++r)
        for (int c = 0; c < n; ++c) dst.at(r, static_cast<int>(k) * n + c) = sign * dt.at(r, c);
    }
  };
  fill(a_free, spec.free_arcs);
  fill(a_dep, dependents);
  QMat dep_sol = -(qinverse(a_dep) * a_free);  // dependent coefficients from free ones

  // full solution matrix, arc blocks in word order
  model.solution = QMat(n * arcs, m);
  for (int k = 0; k < nfree; ++k) {
    const int i = spec.free_arcs[k];
    for (int c = 0; c < n; ++c) model.solution.at(i * n + c, k * n + c) = 1;
  }
  for (size_t k = 0; k < dependents.size(); ++k) {
    const int i = dependents[k];
    for (int c = 0; c < n; ++c)
      for (int j = 0; j < m; ++j)
        model.solution.at(i * n + c, j) = dep_sol.at(static_cast<int>(k) * n + c, j);
  }

  // hyperbolic pairing
  QMat met(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    met.at(i, n + i) = 1;
    met.at(n + i, i) = 1;
  }

  // fold of the extension product, abelian specialization
  QMat running(2 * n, m), form(m, m);
  for (int i = 0; i < arcs; ++i) {
    QMat block(n, m);
    for (int c = 0; c < n; ++c)
      for (int j = 0; j < m; ++j) block.at(c, j) = model.solution.at(i * n + c, j);
    QMat side_dlog = transpose(dirs[i]) * block;  // 2n x m
    if (spec.word[i].reversed) side_dlog = -side_dlog;
    QMat cross = transpose(running) * (met * side_dlog);
    Rat half(1, 2);
    form = form + half * (cross - transpose(cross));
    running = running + side_dlog;
  }
  for (const Rat& q : running.a)
    if (q != 0) throw std::logic_error("gamma model: constraint not solved");
  if (!is_skew(form)) throw std::logic_error("gamma model: form not skew");

  model.torus.param_dim = m;
  model.torus.form = form;
  if (qrank(form) != m)
    throw std::domain_error("gamma model '" + spec.name + "': degenerate symplectic form");

  // lattice: per free arc, integer windings (Lambda(theta) for the v arc);
  // dependent lifts must shift integrally under every generator
  std::vector<ZMat> blocks;
  int lattice_rows = 0;
  for (int i : spec.free_arcs) {
    ZMat w = spec.word[i].label[0] == 'v' ? windings_v : ZMat::identity(n);
    blocks.push_back(w);
    lattice_rows += w.rows;
  }
  model.torus.lattice = ZMat(lattice_rows, m);
  int row = 0;
  for (int k = 0; k < nfree; ++k) {
    for (int r = 0; r < blocks[k].rows; ++r) {
      for (int c = 0; c < n; ++c) model.torus.lattice.at(row, k * n + c) = blocks[k].at(r, c);
      ++row;
    }
  }
  QMat shifts = model.solution * transpose(to_rational(model.torus.lattice));
  if (!is_integer_matrix(shifts))
    throw std::logic_error("gamma model: winding shifted a dependent lift off the lattice");

  auto leg = [&](const std::vector<int>& leg_arcs) {
    QMat t(n * static_cast<int>(leg_arcs.size()), m);
    for (size_t k = 0; k < leg_arcs.size(); ++k)
      for (int c = 0; c < n; ++c)
        for (int j = 0; j < m; ++j)
          t.at(static_cast<int>(k) * n + c, j) = model.solution.at(leg_arcs[k] * n + c, j);
    return t;
  };
  model.source_map = leg(spec.source_arcs);
  model.target_map = leg(spec.target_arcs);
  return model;
}

Side arc(const std::string& l, bool rev = false) { return {SideKind::Arc, l, rev}; }

}  // namespace

GammaSpaces gamma_spaces(const SkewTheta& theta) {
  if (!theta.exact) throw std::invalid_argument("gamma_spaces: exact mode required");
  if (qrank(theta.q) != theta.n)
    throw std::domain_error("gamma_spaces: theta must be invertible (transversality)");
  ZMat windings_v = graph_lattice_intersection(theta);

  GammaSpaces gs;
  gs.g11 = build_gamma({"gamma11",
                        {arc("r"), arc("b"), arc("v", true), arc("b", true)},
                        {1, 2},
                        {1},
                        {3}},
                       theta, windings_v);
  gs.g11_swap = build_gamma({"gamma11_swap",
                             {arc("b"), arc("r"), arc("v", true), arc("r", true)},
                             {1, 2},
                             {1},
                             {3}},
                            theta, windings_v);
  gs.g00 = build_gamma({"gamma00",
                        {arc("b"), arc("r"), arc("b"), arc("v", true), arc("b", true),
                         arc("r", true)},
                        {0, 1, 2, 3},
                        {1, 2},
                        {5, 4}},
                       theta, windings_v);
  gs.g01 = build_gamma({"gamma01",
                        {arc("b"), arc("r"), arc("v", true), arc("b", true), arc("r", true)},
                        {0, 1, 2},
                        {4, 3},
                        {1}},
                       theta, windings_v);
  gs.g10 = build_gamma({"gamma10",
                        {arc("r"), arc("b"), arc("v", true), arc("r", true), arc("b", true)},
                        {0, 1, 2},
                        {3, 4},
                        {1}},
                       theta, windings_v);
  return gs;
}

QMat base_poisson(const GammaModel& gamma, const QMat& leg) {
  if (qrank(leg) != leg.rows)
    throw std::domain_error("base_poisson: leg map not of full row rank");
  QMat om_inv = qinverse(gamma.torus.form);
  return leg * (om_inv * transpose(leg));
}

MoritaBivectors morita_bivectors(const GammaSpaces& gs, const SkewTheta& theta) {
  MoritaBivectors out;
  out.pi_r = base_poisson(gs.g11_swap, gs.g11_swap.target_map);
  out.pi_b = base_poisson(gs.g11, gs.g11.target_map);
  QMat theta_inv = qinverse(theta.q);

  // shared sign: pi_r = eps theta and pi_b = eps theta^{-1}
  for (int eps : {1, -1}) {
    if (out.pi_r == Rat(eps) * theta.q && out.pi_b == Rat(eps) * theta_inv) {
      out.epsilon = eps;
      out.witnessed = true;
      break;
    }
  }
  return out;
}

bool integrality_check(const AffineSymplecticTorus& torus, const Rat& planck) {
  if (planck <= 0) throw std::invalid_argument("integrality_check: planck must be positive");
  QMat l = to_rational(torus.lattice);
  QMat pairing = (1 / planck) * (l * (torus.form * transpose(l)));
  return is_integer_matrix(pairing);
}

SurjectivityReport morita_surjectivity(const GammaModel& g01, const GammaModel& g10) {
  SurjectivityReport rep;
  rep.rank_g01 = qrank(g01.target_map);
  rep.expected_g01 = g01.target_map.rows;
  rep.rank_g10 = qrank(g10.source_map);
  rep.expected_g10 = g10.source_map.rows;
  rep.pass = rep.rank_g01 == rep.expected_g01 && rep.rank_g10 == rep.expected_g10;
  return rep;
}

// --- quantum torus ----------------------------------------------------------

TorusAlgebraElement qt_monomial(const std::vector<long>& p, std::complex<double> coeff) {
  TorusAlgebraElement e;
  e.n = static_cast<int>(p.size());
  e.terms[p] = coeff;
  return e;
}

TorusAlgebraElement qt_unit(int n) { return qt_monomial(std::vector<long>(n, 0)); }

TorusAlgebraElement qt_multiply(const TorusAlgebraElement& a, const TorusAlgebraElement& b,
                                const SkewTheta& theta) {
  if (a.n != b.n || a.n != theta.n)
    throw std::invalid_argument("qt_multiply: exponent length mismatch");
  TorusAlgebraElement out;
  out.n = a.n;
  for (const auto& [p, ca] : a.terms) {
    for (const auto& [q, cb] : b.terms) {
      double phase = 0.0;
      for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
          phase += static_cast<double>(p[i]) * theta.f(i, j) * static_cast<double>(q[j]);
      std::complex<double> w =
          std::exp(std::complex<double>(0.0, std::numbers::pi * phase));
      std::vector<long> sum(a.n);
      for (int i = 0; i < a.n; ++i) sum[i] = p[i] + q[i];
      out.terms[sum] += ca * cb * w;
    }
  }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = std::abs(it->second) == 0.0 ? out.terms.erase(it) : std::next(it);
  return out;
}

TorusAlgebraElement qt_monomial_inverse(const TorusAlgebraElement& monomial) {
  if (monomial.terms.size() != 1)
    throw std::invalid_argument("qt_monomial_inverse: not a monomial");
  const auto& [p, c] = *monomial.terms.begin();
  std::vector<long> neg(p.size());
  for (size_t i = 0; i < p.size(); ++i) neg[i] = -p[i];
  return qt_monomial(neg, 1.0 / c);
}

double qt_distance(const TorusAlgebraElement& a, const TorusAlgebraElement& b) {
  double d = 0.0;
  for (const auto& [p, c] : a.terms) {
    auto it = b.terms.find(p);
    d = std::max(d, std::abs(c - (it == b.terms.end() ? 0.0 : it->second)));
  }
  for (const auto& [p, c] : b.terms)
    if (!a.terms.count(p)) d = std::max(d, std::abs(c));
  return d;
}

ZMat qt_center(const SkewTheta& theta) {
  if (!theta.exact) throw std::invalid_argument("qt_center: exact mode required");
  return graph_lattice_intersection(theta);
}

}  // namespace holoform
