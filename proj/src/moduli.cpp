#include "holoform/moduli.hpp"

#include <algorithm>
#include <cmath>

namespace holoform {

SlotLayout make_layout(const ColoredPolygon& p) {
  SlotLayout layout;
  layout.side_slot.assign(p.size(), -1);
  const int dim = p.algebra->dim();
  int offset = 0;

  auto add_slot = [&](Slot s) {
    s.param_offset = offset;
    offset += s.param_count;
    layout.slots.push_back(std::move(s));
    return static_cast<int>(layout.slots.size()) - 1;
  };

  for (int i = 0; i < p.size(); ++i) {
    const Side& side = p.word[i];
    if (side.kind == SideKind::Arc) {
      Slot s;
      s.kind = SideKind::Arc;
      s.label = side.label;
      s.word_index = i;
      const Mat& span = p.span_of(side.label);
      s.directions = orthonormalize_rows(span);
      s.param_count = static_cast<int>(s.directions.rows());
      layout.side_slot[i] = add_slot(std::move(s));
    }
  }
  for (const std::string& id : p.cut_ids()) {
    Slot s;
    s.kind = SideKind::Cut;
    s.label = id;
    s.param_count = dim;
    s.directions = Mat::Identity(dim, dim);
    int fwd = -1;
    for (int i = 0; i < p.size(); ++i)
      if (p.word[i].kind == SideKind::Cut && p.word[i].label == id && !p.word[i].reversed)
        fwd = i;
    s.word_index = fwd;
    int idx = add_slot(std::move(s));
    for (int i = 0; i < p.size(); ++i)
      if (p.word[i].kind == SideKind::Cut && p.word[i].label == id)
        layout.side_slot[i] = idx;
  }
  layout.total_params = offset;
  return layout;
}

Vec slot_lambda(const ModuliPoint& pt, const Vec& tangent, int slot) {
  const Slot& s = pt.layout.slots[slot];
  return s.directions.transpose() * tangent.segment(s.param_offset, s.param_count);
}

Mat side_contribution(const ModuliPoint& pt, int i) {
  const int slot = pt.layout.side_slot[i];
  const Mat& g = pt.holonomy[slot];
  return pt.surface.word[i].reversed ? Mat(g.inverse()) : g;
}

Vec constraint_residual(const ModuliPoint& pt) {
  const auto& alg = pt.algebra();
  Mat prod = Mat::Identity(alg.rep_size(), alg.rep_size());
  for (int i = 0; i < pt.surface.size(); ++i) prod = prod * side_contribution(pt, i);
  return alg.log({prod});
}

Mat constraint_jacobian(const ModuliPoint& pt) {
  const auto& alg = pt.algebra();
  const int n = pt.surface.size();
  const int dim = alg.dim();

  // suffix products of contributions after each position
  std::vector<Mat> suffix(n + 1);
  suffix[n] = Mat::Identity(alg.rep_size(), alg.rep_size());
  for (int i = n - 1; i >= 0; --i) suffix[i] = side_contribution(pt, i) * suffix[i + 1];

  Mat jac = Mat::Zero(dim, pt.params());
  for (int i = 0; i < n; ++i) {
    const int slot = pt.layout.side_slot[i];
    const Slot& s = pt.layout.slots[slot];
    Mat transport = alg.ad_matrix({Mat(suffix[i + 1].inverse())});
    // left-trivialized variation of the contribution per parameter direction
    Mat mu = s.directions.transpose();  // dim x param_count, forward case
    if (pt.surface.word[i].reversed) {
      Mat adg = alg.ad_matrix({pt.holonomy[slot]});
      mu = -adg * mu;
    }
    jac.block(0, s.param_offset, dim, s.param_count) += transport * mu;
  }
  return jac;
}

namespace {

ModuliPoint move_point(const ModuliPoint& pt, const Vec& delta,
                       const std::set<int>& frozen) {
  ModuliPoint out = pt;
  const auto& alg = pt.algebra();
  for (int k = 0; k < static_cast<int>(pt.layout.slots.size()); ++k) {
    if (frozen.count(k)) continue;
    Vec lam = slot_lambda(pt, delta, k);
    if (lam.cwiseAbs().maxCoeff() == 0.0) continue;
    out.holonomy[k] = pt.holonomy[k] * alg.exp(lam).matrix;
  }
  return out;
}

}  // namespace

ModuliPoint project(const ModuliPoint& pt, const ProjectOptions& opts) {
  Vec r = constraint_residual(pt);
  double rn = r.norm();
  if (rn <= opts.target) return pt;

  ModuliPoint cur = pt;
  const int dim = pt.algebra().dim();
  double prev = rn;
  int stalls = 0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    Mat jac = constraint_jacobian(cur);
    for (int k : opts.frozen_slots) {
      const Slot& s = cur.layout.slots[k];
      jac.block(0, s.param_offset, dim, s.param_count).setZero();
    }
    if (rank_svd(jac, 1e-10) < dim)
      throw std::runtime_error(
          "project: rank-deficient constraint differential (submersion violated)");
    Vec delta = -pinv_solve(jac, r);
    cur = move_point(cur, delta, opts.frozen_slots);
    r = constraint_residual(cur);
    rn = r.norm();
    if (rn <= opts.target) return cur;
    if (rn > 0.9 * prev) {
      if (++stalls >= 3) break;
    } else {
      stalls = 0;
    }
    prev = rn;
  }
  if (rn <= 1e-12) return cur;
  throw std::runtime_error("project: Newton iteration did not converge (residual " +
                           std::to_string(rn) + ")");
}

ModuliPoint identity_point(const ColoredPolygon& p) {
  ModuliPoint pt;
  pt.surface = p;
  pt.layout = make_layout(p);
  pt.holonomy.assign(pt.layout.slots.size(),
                     Mat::Identity(p.algebra->rep_size(), p.algebra->rep_size()));
  return pt;
}

ModuliPoint point_from_params(const ColoredPolygon& p, const Vec& params) {
  ModuliPoint pt = identity_point(p);
  if (params.size() != pt.params())
    throw std::invalid_argument("point_from_params: parameter count mismatch");
  for (int k = 0; k < static_cast<int>(pt.layout.slots.size()); ++k) {
    Vec lam = slot_lambda(pt, params, k);
    pt.holonomy[k] = p.algebra->exp(lam).matrix;
  }
  return pt;
}

ModuliPoint random_point(const ColoredPolygon& p, std::uint64_t seed, double scale) {
  if (scale < 0.0 || scale > 0.3)
    throw std::invalid_argument("random_point: scale must lie in [0, 0.3]");
  SlotLayout layout = make_layout(p);
  Rng rng(seed);
  Vec params = rng.uniform_vec(layout.total_params, -scale, scale);
  ModuliPoint raw = point_from_params(p, params);
  return project(raw);
}

ModuliPoint random_point_with_fixed_slot(const ColoredPolygon& p, std::uint64_t seed,
                                         double scale, int word_index, const Mat& holonomy) {
  if (scale < 0.0 || scale > 0.3)
    throw std::invalid_argument("random_point_with_fixed_slot: scale must lie in [0, 0.3]");
  SlotLayout layout = make_layout(p);
  Rng rng(seed);
  Vec params = rng.uniform_vec(layout.total_params, -scale, scale);
  ModuliPoint raw = point_from_params(p, params);
  const int slot = layout.side_slot[word_index];
  raw.holonomy[slot] = holonomy;
  ProjectOptions opts;
  opts.frozen_slots = {slot};
  return project(raw, opts);
}

Mat tangent_basis(const ModuliPoint& pt) {
  Mat jac = constraint_jacobian(pt);
  Mat ns = nullspace_basis(jac, 1e-8);
  const int expected = moduli_dimension(pt.surface);
  if (ns.cols() != expected)
    throw std::runtime_error("tangent_basis: nullspace dimension " +
                             std::to_string(ns.cols()) + " != moduli dimension " +
                             std::to_string(expected));
  return ns;
}

Mat tangent_basis_frozen(const ModuliPoint& pt, const std::set<int>& frozen_slots) {
  Mat jac = constraint_jacobian(pt);
  std::vector<int> keep;
  for (int k = 0; k < static_cast<int>(pt.layout.slots.size()); ++k) {
    if (frozen_slots.count(k)) continue;
    const Slot& s = pt.layout.slots[k];
    for (int c = 0; c < s.param_count; ++c) keep.push_back(s.param_offset + c);
  }
  Mat sub(jac.rows(), keep.size());
  for (size_t c = 0; c < keep.size(); ++c) sub.col(c) = jac.col(keep[c]);
  Mat ns = nullspace_basis(sub, 1e-8);
  Mat full = Mat::Zero(pt.params(), ns.cols());
  for (size_t c = 0; c < keep.size(); ++c) full.row(keep[c]) = ns.row(c);
  return full;
}

ModuliPoint chart(const ModuliPoint& pt, const Mat& basis, const Vec& coords) {
  if (coords.size() != basis.cols())
    throw std::invalid_argument("chart: coordinate count mismatch");
  if (coords.norm() > 0.1) throw std::invalid_argument("chart: coordinates too large");
  if (coords.cwiseAbs().maxCoeff() == 0.0) return pt;
  Vec delta = basis * coords;
  ModuliPoint moved = move_point(pt, delta, {});
  return project(moved);
}

nlohmann::json point_to_json(const ModuliPoint& pt) {
  nlohmann::json j;
  std::vector<std::string> tokens;
  for (const Side& s : pt.surface.word) tokens.push_back(side_token(s));
  j["word"] = tokens;
  j["coloring"] = pt.surface.coloring_names;
  nlohmann::json sides = nlohmann::json::array();
  const auto& alg = pt.algebra();
  for (size_t k = 0; k < pt.layout.slots.size(); ++k) {
    const Slot& s = pt.layout.slots[k];
    nlohmann::json e;
    e["kind"] = s.kind == SideKind::Arc ? "arc" : "cut";
    e["label"] = s.label;
    Vec x = alg.log({pt.holonomy[k]});
    e["coords"] = std::vector<double>(x.data(), x.data() + x.size());
    sides.push_back(e);
  }
  j["sides"] = sides;
  return j;
}

ModuliPoint point_from_json(const nlohmann::json& j, const Backend& backend) {
  std::vector<std::string> tokens = j.at("word").get<std::vector<std::string>>();
  std::map<std::string, std::string> names =
      j.at("coloring").get<std::map<std::string, std::string>>();
  ColoredPolygon p = polygon_from_tokens(tokens, backend, names);
  ModuliPoint pt = identity_point(p);
  const auto& sides = j.at("sides");
  if (sides.size() != pt.layout.slots.size())
    throw std::invalid_argument("point_from_json: slot count mismatch");
  for (size_t k = 0; k < pt.layout.slots.size(); ++k) {
    std::vector<double> c = sides[k].at("coords").get<std::vector<double>>();
    if (static_cast<int>(c.size()) != backend.algebra->dim())
      throw std::invalid_argument("point_from_json: coordinate size mismatch");
    Vec x = Eigen::Map<Vec>(c.data(), c.size());
    pt.holonomy[k] = backend.algebra->exp(x).matrix;
  }
  return pt;
}

}  // namespace holoform
