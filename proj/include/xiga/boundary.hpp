#pragma once

#include <array>
#include <vector>

#include "xiga/assembly.hpp"
#include "xiga/patch.hpp"

namespace xiga {

// Kinematic condition applied to one parametric edge of the patch.
//  - SimplySupported: w, tangential in-plane displacement and
//    tangential shear rotation vanish (hard version); the soft
//    version pins w only. Requires a geometrically straight edge.
//  - Clamped: all five unknowns vanish on the edge row and w vanishes
//    on the adjacent row too, killing the normal slope.
//  - Symmetry: mirror plane through the edge; the odd unknowns (in-
//    plane normal displacement, normal rotation) vanish and w of the
//    edge row is tied to the adjacent row. Control points within
//    release_radius of the origin are left free, which opens the edge
//    as a crack face.
//  - AntiSymmetry: the complementary mirror family on the same plane;
//    the unknowns even under the mirror with an odd deflection (w,
//    in-plane tangential displacement, tangential rotation) vanish.
//    A half model solved once per family recovers the full spectrum;
//    release_radius opens a crack face exactly as for Symmetry.
// Both mirror conditions assume the edge lies on the plane y = 0.
enum class EdgeCondition {
    Free,
    SimplySupported,
    SoftSimplySupported,
    Clamped,
    Symmetry,
    AntiSymmetry
};

struct BoundarySpec {
    // Edge order: u_min, u_max, v_min, v_max.
    std::array<EdgeCondition, 4> edge{EdgeCondition::Free, EdgeCondition::Free,
                                      EdgeCondition::Free, EdgeCondition::Free};
    double release_radius = 0.0;

    static BoundarySpec all(EdgeCondition c);
};

// Reduction from assembled dofs to free unknowns: eliminated dofs map
// to -1, tied dofs share the reduced index of their master. Enriched
// dofs whose stiffness diagonal is negligible relative to the mean
// standard diagonal are eliminated as well (reported in n_pruned).
struct ConstraintSet {
    std::vector<int> map;
    int n_reduced = 0;
    int n_eliminated = 0;
    int n_tied = 0;
    int n_pruned = 0;
};

ConstraintSet build_constraints(const Patch& patch, const DofMap& dofs,
                                const BoundarySpec& bc,
                                const AssembledSystem& sys,
                                double prune_ratio = 1e-12);

struct ReducedSystem {
    Eigen::MatrixXd K, M;
};

ReducedSystem reduce(const AssembledSystem& sys, const ConstraintSet& cons);

// Reduced vector back to the assembled space; eliminated dofs are 0,
// tied dofs copy their master.
Eigen::VectorXd expand(const ConstraintSet& cons, const Eigen::VectorXd& v);

} // namespace xiga
