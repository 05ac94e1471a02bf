#pragma once

#include <vector>

#include <Eigen/Dense>

#include "xiga/crack.hpp"
#include "xiga/material.hpp"
#include "xiga/patch.hpp"

namespace xiga {

// Global dof numbering: 5 dofs per control point (u0, v0, w, bx, by),
// then 5 per step-enriched control point, then 20 (4 branch functions
// x 5) per tip-enriched control point.
class DofMap {
public:
    static constexpr int kPerCp = 5;
    static constexpr int kBranch = 4;

    DofMap(int n_cp, const EnrichmentPlan& plan);

    int n_total() const { return n_total_; }
    int n_standard() const { return kPerCp * n_cp_; }
    int n_enriched() const { return n_total_ - n_standard(); }

    int standard(int cp, int comp) const { return kPerCp * cp + comp; }
    // Base of the 5 step-enrichment dofs of cp, or -1.
    int heaviside_base(int cp) const { return heaviside_base_[cp]; }
    // Base of the 20 branch dofs of cp, or -1; function k component c
    // lives at base + 5*k + c.
    int tip_base(int cp) const { return tip_base_[cp]; }

private:
    int n_cp_, n_total_;
    std::vector<int> heaviside_base_, tip_base_;
};

struct AssembledSystem {
    Eigen::MatrixXd K, M;
    int n_elements = 0;
    int n_quadrature = 0;
};

// Global stiffness and consistent mass for the cracked plate. The
// crack pointer (with its plan) may be null for the intact plate.
// Under FullGauss quadrature a point landing exactly on the crack line
// is assigned to the positive side instead of raising an error.
AssembledSystem assemble(const Patch& patch, const GradedMaterial& material,
                         double thickness, const PlateTheory& theory,
                         const DofMap& dofs, const EnrichmentPlan& plan,
                         const CrackModel* crack,
                         CutQuadrature quadrature = CutQuadrature::Conforming);

} // namespace xiga
