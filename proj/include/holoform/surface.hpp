#ifndef HOLOFORM_SURFACE_HPP
#define HOLOFORM_SURFACE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holoform/lie_algebra.hpp"

namespace holoform {

enum class SideKind { Arc, Cut };

/// One side of the polygon word. `label` is the coloring key for arcs and
/// the pair id for cuts. A reversed side contributes the inverse of its
/// stored holonomy to the boundary product.
struct Side {
  SideKind kind = SideKind::Arc;
  std::string label;
  bool reversed = false;

  bool operator==(const Side&) const = default;
};

/// Colored surface cut to a polygon: cyclic boundary word plus the coloring
/// of arc labels by Lagrangian subalgebra spans. The boundary word is read
/// counterclockwise; holonomies compose in traversal order.
struct ColoredPolygon {
  std::vector<Side> word;
  AlgebraPtr algebra;
  std::map<std::string, Mat> coloring;  // arc label -> span rows
  std::map<std::string, std::string> coloring_names;  // label -> backend key, for io

  int size() const { return static_cast<int>(word.size()); }
  const Mat& span_of(const std::string& label) const;
  bool is_arc(int i) const { return word[i].kind == SideKind::Arc; }
  std::vector<std::string> cut_ids() const;
};

struct CornerCheck {
  int position = 0;  // word index of the first arc of the adjacent pair
  std::string label_a, label_b;
  bool through_cut = false;
  bool transverse = false;
};

struct ArcCheck {
  int position = 0;
  std::string label;
  bool lagrangian = false;
  SubalgebraReport detail;
};

struct ValidationReport {
  std::vector<CornerCheck> corners;
  std::vector<ArcCheck> arcs;
  bool cuts_consistent = false;
  std::vector<std::string> errors;
  bool pass = false;
};

/// Checks cut pairing, per-arc Lagrangian certificates, and transversality at
/// every genuine corner of the surface (arc-arc adjacencies, including
/// adjacencies across re-glued cuts).
ValidationReport validate(const ColoredPolygon& p);

/// dim of the moduli space: sum of arc subalgebra dimensions plus dim(g) per
/// cut pair, minus dim(g) for the boundary relation.
int moduli_dimension(const ColoredPolygon& p);

struct SideRef {
  int poly = 0;  // 0 = first argument, 1 = second
  int index = 0;
};

struct GluedSide {
  std::vector<SideRef> sources;  // one entry, or two for a merged arc (word order)
};

struct GlueResult {
  ColoredPolygon surface;
  std::vector<GluedSide> sides;  // provenance, parallel to surface.word
};

/// Glues two polygons along one arc of each (same label, opposite
/// orientations). Adjacent same-label arcs at the two seam corners merge
/// into single arcs. Throws std::invalid_argument on label or orientation
/// mismatch.
GlueResult glue(const ColoredPolygon& p1, int a1, const ColoredPolygon& p2, int a2);

/// The polygons of the worked examples: square, triangle, annulus_with_cut,
/// gamma00, gamma01, gamma10, gamma11. Labels refer to backend subalgebra
/// names; defaults are {"r","b","v"} as appropriate.
ColoredPolygon builtin_surface(const std::string& name, const Backend& backend,
                               const std::vector<std::string>& labels = {});

/// Side token syntax: "r", "b2", "r^-1" for arcs, "#c", "#c^-1" for cuts.
Side parse_side_token(const std::string& token);
std::string side_token(const Side& s);

/// Builds a polygon from side tokens and a label -> backend-subalgebra-name
/// coloring map.
ColoredPolygon polygon_from_tokens(const std::vector<std::string>& tokens,
                                   const Backend& backend,
                                   const std::map<std::string, std::string>& coloring);

/// True when the two words are equal up to cyclic rotation.
bool words_equal_cyclic(const std::vector<Side>& a, const std::vector<Side>& b);

}  // namespace holoform

#endif
