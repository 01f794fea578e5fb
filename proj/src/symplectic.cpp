#include "holoform/symplectic.hpp"

#include <cmath>
#include <limits>

namespace holoform {

namespace {

double rel_dist(const Mat& a, const Mat& b) {
  return max_abs(a - b) / std::max(1.0, max_abs(b));
}

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

// word pattern helpers
bool is_arc_word(const ModuliPoint& pt, std::initializer_list<bool> reversed) {
  if (pt.surface.size() != static_cast<int>(reversed.size())) return false;
  int i = 0;
  for (bool rev : reversed) {
    const Side& s = pt.surface.word[i++];
    if (s.kind != SideKind::Arc || s.reversed != rev) return false;
  }
  return true;
}

}  // namespace

ExtJet side_jet_stored(const ModuliPoint& pt, int i, const Mat& vectors) {
  const int slot = pt.layout.side_slot[i];
  const int m = static_cast<int>(vectors.cols());
  ExtJet jet;
  jet.value = pt.holonomy[slot];
  jet.dlog.resize(pt.algebra().dim(), m);
  for (int j = 0; j < m; ++j) jet.dlog.col(j) = slot_lambda(pt, vectors.col(j), slot);
  jet.form = Mat::Zero(m, m);
  return jet;
}

ExtJet side_jet(const ModuliPoint& pt, int i, const Mat& vectors) {
  ExtJet jet = side_jet_stored(pt, i, vectors);
  if (pt.surface.word[i].reversed) jet = ext_inv(pt.algebra(), jet);
  return jet;
}

ExtJet fold_word(const ModuliPoint& pt, const Mat& vectors, int base,
                 const std::map<int, Mat>* form_perturbation) {
  const auto& alg = pt.algebra();
  const int n = pt.surface.size();
  ExtJet acc = ext_identity(alg, static_cast<int>(vectors.cols()));
  for (int k = 0; k < n; ++k) {
    const int i = (base + k) % n;
    ExtJet jet = side_jet(pt, i, vectors);
    if (form_perturbation) {
      auto it = form_perturbation->find(i);
      if (it != form_perturbation->end()) jet.form += it->second;
    }
    acc = ext_mul(alg, acc, jet);
  }
  return acc;
}

Mat omega_gram(const ModuliPoint& pt, const Mat& vectors, bool check_tangency, int base,
               const std::map<int, Mat>* form_perturbation) {
  ExtJet folded = fold_word(pt, vectors, base, form_perturbation);
  const Mat id = Mat::Identity(folded.value.rows(), folded.value.cols());
  if (max_abs(folded.value - id) > 1e-9)
    throw std::runtime_error("omega: boundary product is not the identity (residual " +
                             std::to_string(max_abs(folded.value - id)) + ")");
  if (check_tangency && max_abs(folded.dlog) > 1e-7)
    throw std::runtime_error("omega: directions are not tangent to the constraint set");
  return folded.form;
}

Mat omega_matrix(const ModuliPoint& pt, const Mat& basis) {
  return omega_gram(pt, basis, /*check_tangency=*/true);
}

namespace {

// <alpha ^ beta>(xi, eta) for side-valued 1-forms given by left- or
// right-trivialized components.
double wedge_pair(const QuadraticLieAlgebra& alg, const Vec& a_xi, const Vec& a_eta,
                  const Vec& b_xi, const Vec& b_eta) {
  return alg.inner(a_xi, b_eta) - alg.inner(a_eta, b_xi);
}

Vec lam(const ModuliPoint& pt, int word_index, const Vec& v) {
  return slot_lambda(pt, v, pt.layout.side_slot[word_index]);
}

Vec rho(const ModuliPoint& pt, int word_index, const Vec& v) {
  const int slot = pt.layout.side_slot[word_index];
  return pt.algebra().ad({pt.holonomy[slot]}, slot_lambda(pt, v, slot));
}

}  // namespace

double closed_form_square_rb(const ModuliPoint& pt, const Vec& xi, const Vec& eta) {
  require(is_arc_word(pt, {false, false, true, true}) &&
              pt.surface.word[0].label == pt.surface.word[2].label &&
              pt.surface.word[1].label == pt.surface.word[3].label,
          "closed_form_square_rb: expected the r/b square word");
  const auto& alg = pt.algebra();
  // (1/2)<r1^{-1} dr1 ^ db1 b1^{-1}> - (1/2)<b2^{-1} db2 ^ dr2 r2^{-1}>
  double t1 = wedge_pair(alg, lam(pt, 0, xi), lam(pt, 0, eta), rho(pt, 1, xi), rho(pt, 1, eta));
  double t2 = wedge_pair(alg, lam(pt, 3, xi), lam(pt, 3, eta), rho(pt, 2, xi), rho(pt, 2, eta));
  return 0.5 * t1 - 0.5 * t2;
}

double closed_form_square_rbv(const ModuliPoint& pt, const Vec& xi, const Vec& eta) {
  require(is_arc_word(pt, {false, false, true, true}) &&
              pt.surface.word[1].label == pt.surface.word[3].label,
          "closed_form_square_rbv: expected the r/b/v square word");
  const auto& alg = pt.algebra();
  // (1/2)<r^{-1} dr ^ db1 b1^{-1}> - (1/2)<b2^{-1} db2 ^ dv v^{-1}>
  double t1 = wedge_pair(alg, lam(pt, 0, xi), lam(pt, 0, eta), rho(pt, 1, xi), rho(pt, 1, eta));
  double t2 = wedge_pair(alg, lam(pt, 3, xi), lam(pt, 3, eta), rho(pt, 2, xi), rho(pt, 2, eta));
  return 0.5 * t1 - 0.5 * t2;
}

double closed_form_triangle(const ModuliPoint& pt, const Vec& xi, const Vec& eta) {
  require(is_arc_word(pt, {false, false, false}),
          "closed_form_triangle: expected the r/v/b triangle word");
  const auto& alg = pt.algebra();
  // (1/2)<v^{-1} dv ^ db b^{-1}> on {rvb = 1}
  return 0.5 * wedge_pair(alg, lam(pt, 1, xi), lam(pt, 1, eta), rho(pt, 2, xi),
                          rho(pt, 2, eta));
}

double closed_form_annulus(const ModuliPoint& pt, const Vec& xi, const Vec& eta) {
  const auto& w = pt.surface.word;
  require(pt.surface.size() == 6 && w[0].kind == SideKind::Arc && !w[0].reversed &&
              w[1].kind == SideKind::Arc && !w[1].reversed &&
              w[2].kind == SideKind::Cut && !w[2].reversed &&
              w[3].kind == SideKind::Arc && w[3].reversed && w[4].kind == SideKind::Arc &&
              w[4].reversed && w[5].kind == SideKind::Cut && w[5].reversed &&
              w[2].label == w[5].label,
          "closed_form_annulus: expected the annulus-with-cut word");
  const auto& alg = pt.algebra();
  Mat vectors(pt.params(), 2);
  vectors.col(0) = xi;
  vectors.col(1) = eta;
  // (1, omega) = (r1,0)(b1,0)(g,0) ((g,0)(r2,0)(b2,0))^{-1}
  ExtJet left = ext_mul(alg, ext_mul(alg, side_jet_stored(pt, 0, vectors),
                                     side_jet_stored(pt, 1, vectors)),
                        side_jet_stored(pt, 2, vectors));
  ExtJet right = ext_mul(alg, ext_mul(alg, side_jet_stored(pt, 2, vectors),
                                      side_jet_stored(pt, 4, vectors)),
                         side_jet_stored(pt, 3, vectors));
  ExtJet total = ext_mul(alg, left, ext_inv(alg, right));
  const Mat id = Mat::Identity(total.value.rows(), total.value.cols());
  if (max_abs(total.value - id) > 1e-9)
    throw std::runtime_error("closed_form_annulus: point violates the relation");
  return total.form(0, 1);
}

std::optional<double> closed_form_by_name(const std::string& builtin, const ModuliPoint& pt,
                                          const Vec& xi, const Vec& eta) {
  if (builtin == "square") return closed_form_square_rb(pt, xi, eta);
  if (builtin == "gamma11" || builtin == "gamma11_swap")
    return closed_form_square_rbv(pt, xi, eta);
  if (builtin == "triangle") return closed_form_triangle(pt, xi, eta);
  if (builtin == "annulus_with_cut") return closed_form_annulus(pt, xi, eta);
  return std::nullopt;
}

namespace {

// Chart-frame vectors at chart(pt, basis, c0) by central differences.
Mat chart_frame(const ModuliPoint& pt, const Mat& basis, const Vec& c0,
                const ModuliPoint& at_c0, double h) {
  const auto& alg = pt.algebra();
  const int m = static_cast<int>(basis.cols());
  Mat frame(pt.params(), m);
  for (int j = 0; j < m; ++j) {
    Vec cp = c0, cm = c0;
    cp(j) += h;
    cm(j) -= h;
    ModuliPoint pp = chart(pt, basis, cp);
    ModuliPoint pm = chart(pt, basis, cm);
    Vec col = Vec::Zero(pt.params());
    for (int k = 0; k < static_cast<int>(pt.layout.slots.size()); ++k) {
      const Slot& s = pt.layout.slots[k];
      Mat g0inv = at_c0.holonomy[k].inverse();
      Vec lp = alg.log({Mat(g0inv * pp.holonomy[k])});
      Vec lm = alg.log({Mat(g0inv * pm.holonomy[k])});
      Vec mu = (lp - lm) / (2.0 * h);
      col.segment(s.param_offset, s.param_count) = s.directions * mu;
    }
    frame.col(j) = col;
  }
  return frame;
}

}  // namespace

ClosednessReport check_closed(const ModuliPoint& pt, const Mat& basis, double h) {
  const int m = static_cast<int>(basis.cols());
  ClosednessReport rep;
  rep.h = h;
  rep.directions = m;
  if (m < 3) return rep;

  // Gram of omega in the chart coordinate frame, at c0
  auto omega_at = [&](const Vec& c0) {
    ModuliPoint at = chart(pt, basis, c0);
    Mat frame = chart_frame(pt, basis, c0, at, h);
    return omega_gram(at, frame);
  };

  std::vector<Mat> domega(m);  // partial_i of the Gram matrix
  for (int i = 0; i < m; ++i) {
    Vec cp = Vec::Zero(m), cm = Vec::Zero(m);
    cp(i) = h;
    cm(i) = -h;
    domega[i] = (omega_at(cp) - omega_at(cm)) / (2.0 * h);
  }

  double worst = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        double d = domega[i](j, k) - domega[j](i, k) + domega[k](i, j);
        worst = std::max(worst, std::abs(d));
      }
  rep.max_residual = worst;
  return rep;
}

double check_nondegenerate(const ModuliPoint& pt, const Mat& basis) {
  if (basis.cols() % 2 != 0)
    throw std::logic_error("check_nondegenerate: odd-dimensional tangent space");
  Mat gram = omega_matrix(pt, basis);
  Eigen::JacobiSVD<Mat> svd(gram);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

RotatedPresentation rotate_base(const ModuliPoint& pt, int shift) {
  const int n = pt.surface.size();
  shift = ((shift % n) + n) % n;
  ColoredPolygon rotated = pt.surface;
  for (int i = 0; i < n; ++i) rotated.word[i] = pt.surface.word[(i + shift) % n];

  RotatedPresentation out;
  out.point = identity_point(rotated);
  out.param_map = Mat::Zero(out.point.params(), pt.params());
  for (int i = 0; i < n; ++i) {
    const int old_side = (i + shift) % n;
    const int new_slot = out.point.layout.side_slot[i];
    const int old_slot = pt.layout.side_slot[old_side];
    out.point.holonomy[new_slot] = pt.holonomy[old_slot];
    const Slot& ns = out.point.layout.slots[new_slot];
    const Slot& os = pt.layout.slots[old_slot];
    out.param_map.block(ns.param_offset, os.param_offset, ns.param_count, os.param_count) =
        Mat::Identity(ns.param_count, os.param_count);
  }
  return out;
}

RotatedPresentation recut_annulus(const ModuliPoint& pt) {
  const auto& w = pt.surface.word;
  require(pt.surface.size() == 6 && w[2].kind == SideKind::Cut && w[5].kind == SideKind::Cut,
          "recut_annulus: expected the annulus-with-cut word");
  const auto& alg = pt.algebra();

  // new polygon word [b1, r1, c', b2^-1, r2^-1, c'^-1], cut g' = r1^{-1} g
  ColoredPolygon np = pt.surface;
  np.word[0] = w[1];
  np.word[1] = w[0];

  RotatedPresentation out;
  out.point = identity_point(np);
  const int s_r1 = pt.layout.side_slot[0];
  const int s_b1 = pt.layout.side_slot[1];
  const int s_cut = pt.layout.side_slot[2];
  const int s_b2 = pt.layout.side_slot[3];
  const int s_r2 = pt.layout.side_slot[4];
  const int n_b1 = out.point.layout.side_slot[0];
  const int n_r1 = out.point.layout.side_slot[1];
  const int n_cut = out.point.layout.side_slot[2];
  const int n_b2 = out.point.layout.side_slot[3];
  const int n_r2 = out.point.layout.side_slot[4];

  const Mat r1 = pt.holonomy[s_r1];
  const Mat g = pt.holonomy[s_cut];
  out.point.holonomy[n_b1] = pt.holonomy[s_b1];
  out.point.holonomy[n_r1] = r1;
  out.point.holonomy[n_cut] = r1.inverse() * g;
  out.point.holonomy[n_b2] = pt.holonomy[s_b2];
  out.point.holonomy[n_r2] = pt.holonomy[s_r2];

  // tangent transport: arcs carry over, lambda_{g'} = lambda_g - Ad(g^{-1} r1) lambda_{r1}
  out.param_map = Mat::Zero(out.point.params(), pt.params());
  auto copy_block = [&](int nslot, int oslot) {
    const Slot& ns = out.point.layout.slots[nslot];
    const Slot& os = pt.layout.slots[oslot];
    out.param_map.block(ns.param_offset, os.param_offset, ns.param_count, os.param_count) =
        Mat::Identity(ns.param_count, os.param_count);
  };
  copy_block(n_b1, s_b1);
  copy_block(n_r1, s_r1);
  copy_block(n_b2, s_b2);
  copy_block(n_r2, s_r2);

  const Slot& nc = out.point.layout.slots[n_cut];
  const Slot& oc = pt.layout.slots[s_cut];
  out.param_map.block(nc.param_offset, oc.param_offset, nc.param_count, oc.param_count) =
      Mat::Identity(nc.param_count, oc.param_count);
  const Slot& or1 = pt.layout.slots[s_r1];
  Mat transport = -alg.ad_matrix({Mat(g.inverse() * r1)}) * or1.directions.transpose();
  out.param_map.block(nc.param_offset, or1.param_offset, nc.param_count, or1.param_count) =
      transport;
  return out;
}

InvarianceReport invariance_checks(const ModuliPoint& pt, const Mat& basis) {
  InvarianceReport rep;
  Mat reference = omega_gram(pt, basis, true);
  for (int shift = 1; shift < pt.surface.size(); ++shift) {
    RotatedPresentation rot = rotate_base(pt, shift);
    Mat gram = omega_gram(rot.point, rot.param_map * basis, true);
    rep.rotation_residual = std::max(rep.rotation_residual, max_abs(gram - reference));
  }
  if (!pt.surface.cut_ids().empty()) {
    RotatedPresentation rc = recut_annulus(pt);
    Mat gram = omega_gram(rc.point, rc.param_map * basis, true);
    rep.recut_residual = max_abs(gram - reference);
  }
  return rep;
}

ComposeResult compose(const ModuliPoint& pt1, int a1, const ModuliPoint& pt2, int a2,
                      double seam_tol) {
  ComposeResult out;
  out.glued = glue(pt1.surface, a1, pt2.surface, a2);

  const Mat& g1 = pt1.holonomy[pt1.layout.side_slot[a1]];
  const Mat& g2 = pt2.holonomy[pt2.layout.side_slot[a2]];
  if (rel_dist(g1, g2) > seam_tol)
    throw std::invalid_argument("compose: seam holonomy mismatch (distance " +
                                std::to_string(rel_dist(g1, g2)) + ")");

  out.point = identity_point(out.glued.surface);
  auto source_holonomy = [&](const SideRef& ref) -> const Mat& {
    const ModuliPoint& p = ref.poly == 0 ? pt1 : pt2;
    return p.holonomy[p.layout.side_slot[ref.index]];
  };
  for (int i = 0; i < out.point.surface.size(); ++i) {
    const GluedSide& gs = out.glued.sides[i];
    const int slot = out.point.layout.side_slot[i];
    if (gs.sources.size() == 1) {
      out.point.holonomy[slot] = source_holonomy(gs.sources[0]);
    } else {
      const Mat& ga = source_holonomy(gs.sources[0]);
      const Mat& gb = source_holonomy(gs.sources[1]);
      // merged stored holonomy: word order for forward arcs, reversed
      // composition for a reversed pair
      out.point.holonomy[slot] =
          out.point.surface.word[i].reversed ? Mat(gb * ga) : Mat(ga * gb);
    }
  }
  Vec r = constraint_residual(out.point);
  if (r.norm() > 1e-13) out.point = project(out.point);
  return out;
}

Vec dcompose(const ModuliPoint& pt1, const ModuliPoint& pt2, const ComposeResult& cr,
             const Vec& xi1, const Vec& xi2) {
  const auto& alg = pt1.algebra();
  const ModuliPoint& cp = cr.point;
  Vec out = Vec::Zero(cp.params());
  auto source_lambda = [&](const SideRef& ref) {
    const ModuliPoint& p = ref.poly == 0 ? pt1 : pt2;
    const Vec& xi = ref.poly == 0 ? xi1 : xi2;
    return slot_lambda(p, xi, p.layout.side_slot[ref.index]);
  };
  auto source_holonomy = [&](const SideRef& ref) -> const Mat& {
    const ModuliPoint& p = ref.poly == 0 ? pt1 : pt2;
    return p.holonomy[p.layout.side_slot[ref.index]];
  };

  std::set<int> done;
  for (int i = 0; i < cp.surface.size(); ++i) {
    const int slot = cp.layout.side_slot[i];
    if (done.count(slot)) continue;
    done.insert(slot);
    const GluedSide& gs = cr.glued.sides[i];
    Vec lambda;
    if (gs.sources.size() == 1) {
      lambda = source_lambda(gs.sources[0]);
    } else {
      Vec la = source_lambda(gs.sources[0]);
      Vec lb = source_lambda(gs.sources[1]);
      const Mat& ga = source_holonomy(gs.sources[0]);
      const Mat& gb = source_holonomy(gs.sources[1]);
      if (!cp.surface.word[i].reversed) {
        // X = ga gb: lambda = Ad(gb)^{-1} la + lb
        lambda = alg.ad_matrix({Mat(gb.inverse())}) * la + lb;
      } else {
        // X = gb ga: lambda = Ad(ga)^{-1} lb + la
        lambda = alg.ad_matrix({Mat(ga.inverse())}) * lb + la;
      }
    }
    const Slot& s = cp.layout.slots[slot];
    Vec coeff = s.directions * lambda;
    if ((s.directions.transpose() * coeff - lambda).norm() > 1e-8 * (1.0 + lambda.norm()))
      throw std::runtime_error("dcompose: merged variation left the arc subalgebra");
    out.segment(s.param_offset, s.param_count) = coeff;
  }
  return out;
}

LagrangianGraphReport check_lagrangian_graph(const ModuliPoint& pt1, int a1,
                                             const ModuliPoint& pt2, int a2) {
  Mat b1 = tangent_basis(pt1);
  Mat b2 = tangent_basis(pt2);
  const int m1 = static_cast<int>(b1.cols());
  const int m2 = static_cast<int>(b2.cols());
  const int s1 = pt1.layout.side_slot[a1];
  const int s2 = pt2.layout.side_slot[a2];
  const int dim = pt1.algebra().dim();

  // seam matching linearization on pairs (c1, c2)
  Mat match(dim, m1 + m2);
  for (int j = 0; j < m1; ++j) match.col(j) = slot_lambda(pt1, b1.col(j), s1);
  for (int j = 0; j < m2; ++j) match.col(m1 + j) = -slot_lambda(pt2, b2.col(j), s2);
  Mat kernel = nullspace_basis(match, 1e-8);

  ComposeResult cr = compose(pt1, a1, pt2, a2);
  Mat b12 = tangent_basis(cr.point);
  const int m12 = static_cast<int>(b12.cols());

  LagrangianGraphReport rep;
  rep.graph_dim = static_cast<int>(kernel.cols());
  rep.expected_dim = (m1 + m2 + m12) / 2;
  rep.dims_ok = (m1 + m2 + m12) % 2 == 0 && rep.graph_dim == rep.expected_dim;

  Mat g1 = omega_gram(pt1, b1, true);
  Mat g2 = omega_gram(pt2, b2, true);
  Mat k1 = kernel.topRows(m1);
  Mat k2 = kernel.bottomRows(m2);

  Mat pushed(cr.point.params(), kernel.cols());
  for (int t = 0; t < kernel.cols(); ++t)
    pushed.col(t) = dcompose(pt1, pt2, cr, b1 * k1.col(t), b2 * k2.col(t));
  Mat g12 = omega_gram(cr.point, pushed);

  Mat q = -k1.transpose() * g1 * k1 - k2.transpose() * g2 * k2 + g12;
  rep.isotropy_residual = max_abs(q);
  return rep;
}

ModuliPoint lw_unit(const ColoredPolygon& square, const Mat& b_holonomy) {
  ModuliPoint pt = identity_point(square);
  require(pt.surface.size() == 4, "lw_unit: expected a square");
  pt.holonomy[pt.layout.side_slot[1]] = b_holonomy;
  pt.holonomy[pt.layout.side_slot[3]] = b_holonomy;
  return pt;
}

ModuliPoint lw_inverse(const ModuliPoint& pt) {
  require(pt.surface.size() == 4, "lw_inverse: expected a square");
  ModuliPoint out = pt;
  const int r1 = pt.layout.side_slot[0], b1 = pt.layout.side_slot[1];
  const int r2 = pt.layout.side_slot[2], b2 = pt.layout.side_slot[3];
  out.holonomy[r1] = pt.holonomy[r1].inverse();
  out.holonomy[r2] = pt.holonomy[r2].inverse();
  out.holonomy[b1] = pt.holonomy[b2];
  out.holonomy[b2] = pt.holonomy[b1];
  return out;
}

Mat lw_source(const ModuliPoint& pt) { return pt.holonomy[pt.layout.side_slot[1]]; }
Mat lw_target(const ModuliPoint& pt) { return pt.holonomy[pt.layout.side_slot[3]]; }

double point_distance_up_to_rotation(const ModuliPoint& a, const ModuliPoint& b) {
  const int n = a.surface.size();
  if (n != b.surface.size()) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (int shift = 0; shift < n; ++shift) {
    bool words_match = true;
    for (int i = 0; i < n && words_match; ++i)
      words_match = a.surface.word[(i + shift) % n] == b.surface.word[i];
    if (!words_match) continue;
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
      const Mat& ga = a.holonomy[a.layout.side_slot[(i + shift) % n]];
      const Mat& gb = b.holonomy[b.layout.side_slot[i]];
      d = std::max(d, max_abs(ga - gb));
    }
    best = std::min(best, d);
  }
  return best;
}

}  // namespace holoform
