#include "holoform/surface.hpp"

#include <algorithm>

namespace holoform {

const Mat& ColoredPolygon::span_of(const std::string& label) const {
  auto it = coloring.find(label);
  if (it == coloring.end())
    throw std::invalid_argument("polygon coloring does not resolve label '" + label + "'");
  return it->second;
}

std::vector<std::string> ColoredPolygon::cut_ids() const {
  std::vector<std::string> ids;
  for (const Side& s : word)
    if (s.kind == SideKind::Cut && std::find(ids.begin(), ids.end(), s.label) == ids.end())
      ids.push_back(s.label);
  return ids;
}

namespace {

// Index of the partner side of a cut, or -1.
int cut_partner(const ColoredPolygon& p, int i) {
  for (int j = 0; j < p.size(); ++j)
    if (j != i && p.word[j].kind == SideKind::Cut && p.word[j].label == p.word[i].label)
      return j;
  return -1;
}

// Next arc along the boundary of the re-glued surface, crossing cuts.
// Returns -1 when the walk never reaches an arc.
int next_arc_on_boundary(const ColoredPolygon& p, int arc, bool* through_cut) {
  const int n = p.size();
  int k = (arc + 1) % n;
  *through_cut = false;
  for (int guard = 0; guard <= n; ++guard) {
    if (p.word[k].kind == SideKind::Arc) return k;
    int partner = cut_partner(p, k);
    if (partner < 0) return -1;
    *through_cut = true;
    k = (partner + 1) % n;
  }
  return -1;
}

}  // namespace

ValidationReport validate(const ColoredPolygon& p) {
  ValidationReport rep;
  if (p.word.empty()) {
    rep.errors.push_back("empty boundary word");
    return rep;
  }
  if (!p.algebra) {
    rep.errors.push_back("polygon has no algebra");
    return rep;
  }

  // cut pairing: every id occurs exactly twice, once with each orientation
  rep.cuts_consistent = true;
  for (const std::string& id : p.cut_ids()) {
    int fwd = 0, rev = 0;
    for (const Side& s : p.word)
      if (s.kind == SideKind::Cut && s.label == id) (s.reversed ? rev : fwd)++;
    if (fwd != 1 || rev != 1) {
      rep.cuts_consistent = false;
      rep.errors.push_back("cut id '" + id + "' occurs " + std::to_string(fwd + rev) +
                           " times (" + std::to_string(fwd) + " forward)");
    }
  }

  bool has_arc = false;
  for (const Side& s : p.word) has_arc |= (s.kind == SideKind::Arc);
  if (!has_arc) rep.errors.push_back("surface has no boundary arcs (closed component)");

  // per-arc certificates, one per distinct label
  std::vector<std::string> seen;
  for (int i = 0; i < p.size(); ++i) {
    if (!p.is_arc(i)) continue;
    const std::string& label = p.word[i].label;
    if (!p.coloring.count(label)) {
      rep.errors.push_back("unresolved arc label '" + label + "'");
      continue;
    }
    if (std::find(seen.begin(), seen.end(), label) != seen.end()) continue;
    seen.push_back(label);
    ArcCheck ac;
    ac.position = i;
    ac.label = label;
    ac.lagrangian = is_lagrangian(*p.algebra, p.coloring.at(label), &ac.detail);
    rep.arcs.push_back(ac);
  }

  // corners: every arc-arc adjacency of the re-glued boundary
  if (rep.cuts_consistent && rep.errors.empty()) {
    for (int i = 0; i < p.size(); ++i) {
      if (!p.is_arc(i)) continue;
      bool through = false;
      int j = next_arc_on_boundary(p, i, &through);
      if (j < 0) {
        rep.errors.push_back("boundary walk from side " + std::to_string(i) +
                             " found no corner");
        continue;
      }
      CornerCheck cc;
      cc.position = i;
      cc.label_a = p.word[i].label;
      cc.label_b = p.word[j].label;
      cc.through_cut = through;
      cc.transverse =
          are_transverse(*p.algebra, p.span_of(cc.label_a), p.span_of(cc.label_b));
      rep.corners.push_back(cc);
    }
  }

  rep.pass = rep.errors.empty() && rep.cuts_consistent;
  for (const ArcCheck& a : rep.arcs) rep.pass = rep.pass && a.lagrangian;
  for (const CornerCheck& c : rep.corners) rep.pass = rep.pass && c.transverse;
  return rep;
}

int moduli_dimension(const ColoredPolygon& p) {
  int total = 0;
  for (int i = 0; i < p.size(); ++i)
    if (p.is_arc(i)) total += static_cast<int>(p.span_of(p.word[i].label).rows());
  total += static_cast<int>(p.cut_ids().size()) * p.algebra->dim();
  return total - p.algebra->dim();
}

namespace {

bool spans_equal(const Mat& a, const Mat& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && max_abs(a - b) < 1e-14;
}

}  // namespace

GlueResult glue(const ColoredPolygon& p1, int a1, const ColoredPolygon& p2, int a2) {
  if (a1 < 0 || a1 >= p1.size() || a2 < 0 || a2 >= p2.size())
    throw std::invalid_argument("glue: seam index out of range");
  const Side& s1 = p1.word[a1];
  const Side& s2 = p2.word[a2];
  if (s1.kind != SideKind::Arc || s2.kind != SideKind::Arc)
    throw std::invalid_argument("glue: seam sides must be arcs");
  if (s1.label != s2.label)
    throw std::invalid_argument("glue: seam label mismatch ('" + s1.label + "' vs '" +
                                s2.label + "')");
  if (s1.reversed == s2.reversed)
    throw std::invalid_argument(
        "glue: seam orientations must be opposite for a planar gluing");
  if (p1.algebra != p2.algebra)
    throw std::invalid_argument("glue: polygons over different algebras");

  // cut ids of p2 that collide with p1 get a suffix
  auto rename = [&](const std::string& id) {
    auto ids1 = p1.cut_ids();
    if (std::find(ids1.begin(), ids1.end(), id) != ids1.end()) return id + "~2";
    return id;
  };

  GlueResult out;
  out.surface.algebra = p1.algebra;
  out.surface.coloring = p1.coloring;
  out.surface.coloring_names = p1.coloring_names;
  for (const auto& [label, span] : p2.coloring) {
    auto it = out.surface.coloring.find(label);
    if (it == out.surface.coloring.end()) {
      out.surface.coloring[label] = span;
      auto nit = p2.coloring_names.find(label);
      if (nit != p2.coloring_names.end()) out.surface.coloring_names[label] = nit->second;
    }
    else if (!spans_equal(it->second, span))
      throw std::invalid_argument("glue: label '" + label + "' colored differently");
  }

  struct Piece {
    Side side;
    SideRef ref;
  };
  std::vector<Piece> pieces;
  for (int k = 1; k < p1.size(); ++k) {
    int i = (a1 + k) % p1.size();
    pieces.push_back({p1.word[i], {0, i}});
  }
  for (int k = 1; k < p2.size(); ++k) {
    int i = (a2 + k) % p2.size();
    Side s = p2.word[i];
    if (s.kind == SideKind::Cut) s.label = rename(s.label);
    pieces.push_back({s, {1, i}});
  }

  const int n1 = p1.size() - 1;  // pieces contributed by p1
  const int total = static_cast<int>(pieces.size());
  auto mergeable = [&](const Piece& x, const Piece& y) {
    return x.side.kind == SideKind::Arc && y.side.kind == SideKind::Arc &&
           x.side.label == y.side.label && x.side.reversed == y.side.reversed;
  };

  // The two seam-end corners sit at the junction between the spliced parts
  // and at the wrap-around junction; arcs merge there when aligned.
  const bool mid = n1 >= 1 && n1 < total && mergeable(pieces[n1 - 1], pieces[n1]);
  const bool wrap = total >= 2 && !(mid && (n1 == 1 || n1 == total - 1)) &&
                    mergeable(pieces[total - 1], pieces[0]);

  std::vector<Side> word;
  std::vector<GluedSide> provenance;
  auto emit = [&](std::vector<int> idxs) {
    word.push_back(pieces[idxs[0]].side);
    GluedSide gs;
    for (int i : idxs) gs.sources.push_back(pieces[i].ref);
    provenance.push_back(gs);
  };

  int start = 0, end = total;
  if (wrap) {
    emit({total - 1, 0});  // word order of the merged arc: last piece then first
    start = 1;
    end = total - 1;
  }
  for (int i = start; i < end; ++i) {
    if (mid && i == n1 - 1) {
      emit({n1 - 1, n1});
      ++i;
      continue;
    }
    emit({i});
  }

  out.surface.word = word;
  out.sides = provenance;
  return out;
}

ColoredPolygon builtin_surface(const std::string& name, const Backend& backend,
                               const std::vector<std::string>& labels) {
  std::string r = labels.size() > 0 ? labels[0] : "r";
  std::string b = labels.size() > 1 ? labels[1] : "b";
  std::string v = labels.size() > 2 ? labels[2] : "v";

  ColoredPolygon p;
  p.algebra = backend.algebra;
  auto arc = [](const std::string& l, bool rev = false) {
    return Side{SideKind::Arc, l, rev};
  };
  auto cut = [](const std::string& l, bool rev = false) {
    return Side{SideKind::Cut, l, rev};
  };
  // word labels may be renamed; lookup keys into the backend stay canonical
  auto color_r = [&] { p.coloring[r] = backend.span("r"); p.coloring_names[r] = "r"; };
  auto color_b = [&] { p.coloring[b] = backend.span("b"); p.coloring_names[b] = "b"; };
  auto color_v = [&] { p.coloring[v] = backend.span("v"); p.coloring_names[v] = "v"; };

  if (name == "square") {
    p.word = {arc(r), arc(b), arc(r, true), arc(b, true)};
    color_r(); color_b();
  } else if (name == "triangle") {
    p.word = {arc(r), arc(v), arc(b)};
    color_r(); color_b(); color_v();
  } else if (name == "annulus_with_cut") {
    p.word = {arc(r), arc(b), cut("c"), arc(b, true), arc(r, true), cut("c", true)};
    color_r(); color_b();
  } else if (name == "gamma11") {
    p.word = {arc(r), arc(b), arc(v, true), arc(b, true)};
    color_r(); color_b(); color_v();
  } else if (name == "gamma11_swap") {
    p.word = {arc(b), arc(r), arc(v, true), arc(r, true)};
    color_r(); color_b(); color_v();
  } else if (name == "gamma00") {
    p.word = {arc(b), arc(r), arc(b), arc(v, true), arc(b, true), arc(r, true)};
    color_r(); color_b(); color_v();
  } else if (name == "gamma01") {
    p.word = {arc(b), arc(r), arc(v, true), arc(b, true), arc(r, true)};
    color_r(); color_b(); color_v();
  } else if (name == "gamma10") {
    p.word = {arc(r), arc(b), arc(v, true), arc(r, true), arc(b, true)};
    color_r(); color_b(); color_v();
  } else {
    throw std::invalid_argument("unknown builtin surface '" + name + "'");
  }
  return p;
}

Side parse_side_token(const std::string& token) {
  std::string t = token;
  Side s;
  if (!t.empty() && t[0] == '#') {
    s.kind = SideKind::Cut;
    t = t.substr(1);
  }
  const std::string inv = "^-1";
  if (t.size() > inv.size() && t.compare(t.size() - inv.size(), inv.size(), inv) == 0) {
    s.reversed = true;
    t = t.substr(0, t.size() - inv.size());
  }
  if (t.empty()) throw std::invalid_argument("empty side token '" + token + "'");
  s.label = t;
  return s;
}

std::string side_token(const Side& s) {
  std::string t = (s.kind == SideKind::Cut ? "#" : "") + s.label;
  if (s.reversed) t += "^-1";
  return t;
}

ColoredPolygon polygon_from_tokens(const std::vector<std::string>& tokens,
                                   const Backend& backend,
                                   const std::map<std::string, std::string>& coloring) {
  ColoredPolygon p;
  p.algebra = backend.algebra;
  for (const std::string& t : tokens) p.word.push_back(parse_side_token(t));
  for (const Side& s : p.word) {
    if (s.kind != SideKind::Arc || p.coloring.count(s.label)) continue;
    auto it = coloring.find(s.label);
    if (it == coloring.end())
      throw std::invalid_argument("no coloring for arc label '" + s.label + "'");
    p.coloring[s.label] = backend.span(it->second);
    p.coloring_names[s.label] = it->second;
  }
  return p;
}

bool words_equal_cyclic(const std::vector<Side>& a, const std::vector<Side>& b) {
  if (a.size() != b.size()) return false;
  const int n = static_cast<int>(a.size());
  for (int shift = 0; shift < n; ++shift) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = a[(i + shift) % n] == b[i];
    if (ok) return true;
  }
  return n == 0;
}

}  // namespace holoform
