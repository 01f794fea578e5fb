#ifndef HOLOFORM_MODULI_HPP
#define HOLOFORM_MODULI_HPP

#include <set>
#include <string>
#include <vector>

#include "holoform/surface.hpp"
#include "vendor_json_fwd.hpp"

namespace holoform {

/// One independent holonomy of a moduli point: every arc side owns a slot,
/// every cut pair shares one (the reversed occurrence contributes the
/// inverse). Parameters are coefficients in `directions` (rows spanning the
/// arc subalgebra, or the whole algebra for cuts).
struct Slot {
  SideKind kind = SideKind::Arc;
  std::string label;
  int word_index = 0;  // the side (arc) or the forward occurrence (cut)
  int param_offset = 0;
  int param_count = 0;
  Mat directions;  // param_count x dim
};

struct SlotLayout {
  std::vector<Slot> slots;
  std::vector<int> side_slot;  // word position -> slot index
  int total_params = 0;
};

SlotLayout make_layout(const ColoredPolygon& p);

/// Point of the moduli space: one stored group element per slot, subject to
/// the boundary product constraint. Immutable by convention.
struct ModuliPoint {
  ColoredPolygon surface;
  SlotLayout layout;
  std::vector<Mat> holonomy;  // per slot

  const QuadraticLieAlgebra& algebra() const { return *surface.algebra; }
  int params() const { return layout.total_params; }
};

/// Tangent vectors are parameter-space vectors; this extracts the
/// left-trivialized component of the stored holonomy at one slot.
Vec slot_lambda(const ModuliPoint& pt, const Vec& tangent, int slot);

/// Matrix of the contribution of word position i (the stored holonomy, or
/// its inverse for a reversed side).
Mat side_contribution(const ModuliPoint& pt, int i);

/// log of the cyclic boundary product, in algebra coordinates.
Vec constraint_residual(const ModuliPoint& pt);

/// Differential of the boundary product in left trivialization,
/// dim x total_params.
Mat constraint_jacobian(const ModuliPoint& pt);

struct ProjectOptions {
  double target = 1e-13;
  int max_iterations = 50;
  std::set<int> frozen_slots;  // slots excluded from the correction
};

/// Newton projection onto the constraint set with minimal-norm corrections
/// distributed over all (unfrozen) side parameters. Throws on
/// non-convergence and on a rank-deficient constraint differential.
ModuliPoint project(const ModuliPoint& pt, const ProjectOptions& opts = {});

/// Point with all slots at the identity.
ModuliPoint identity_point(const ColoredPolygon& p);

/// Point from per-slot parameter coefficients (holonomy = exp of them).
ModuliPoint point_from_params(const ColoredPolygon& p, const Vec& params);

/// Deterministic random point: uniform parameters in [-scale, scale],
/// Newton-corrected. Requires scale <= 0.3.
ModuliPoint random_point(const ColoredPolygon& p, std::uint64_t seed, double scale = 0.2);

/// Random point with the holonomy of one word position pinned (the Newton
/// correction leaves that slot untouched). Used to sample composable pairs.
ModuliPoint random_point_with_fixed_slot(const ColoredPolygon& p, std::uint64_t seed,
                                         double scale, int word_index, const Mat& holonomy);

/// Orthonormal basis of the kernel of the constraint differential, columns
/// of a total_params x m matrix; m must equal moduli_dimension.
Mat tangent_basis(const ModuliPoint& pt);

/// Same with some slots frozen (their parameter components forced to zero).
Mat tangent_basis_frozen(const ModuliPoint& pt, const std::set<int>& frozen_slots);

/// Local chart: move every slot by exp of the tangent combination, then
/// project back. chart(pt, basis, 0) == pt exactly.
ModuliPoint chart(const ModuliPoint& pt, const Mat& basis, const Vec& coords);

nlohmann::json point_to_json(const ModuliPoint& pt);
ModuliPoint point_from_json(const nlohmann::json& j, const Backend& backend);

}  // namespace holoform

#endif
