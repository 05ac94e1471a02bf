#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "xiga/assembly.hpp"
#include "xiga/boundary.hpp"

namespace xiga {

struct ModalResult {
    std::vector<double> omega; // rad/s, ascending
    // Assembled-space vectors (constraints expanded), mass-normalized
    // in the reduced space, sign fixed so the largest |w| control
    // value is positive. One column per mode.
    Eigen::MatrixXd shapes;
    int n_rigid_excluded = 0;
};

// Lowest n_modes of K phi = omega^2 M phi on the reduced system.
// Near-zero eigenvalues (below 1e-8 of the mean stiffness-to-mass
// diagonal ratio) are treated as leftover rigid motion: excluded and
// counted. Throws std::runtime_error on solver failure, indefinite M,
// or a significantly negative eigenvalue.
ModalResult solve_modal(const ReducedSystem& sys, const ConstraintSet& cons,
                        const DofMap& dofs, int n_modes);

// Frequency scalings used for reporting.
enum class Normalization { None, ThinPlate, ShearSquare, ShearGap };

std::string normalization_name(Normalization n);
Normalization normalization_from_name(const std::string& name);

struct NormalizationInput {
    double span = 0.0;      // plate side / outer radius / radial gap
    double thickness = 0.0;
    double young_ref = 0.0;
    double poisson_ref = 0.0;
    double density_ref = 0.0;
};

// None: omega itself.
// ThinPlate: omega * span^2 * sqrt(rho * h / D), D the flexural
//            stiffness of the reference material.
// ShearSquare / ShearGap: omega * span^2 / h * sqrt(rho_ref / E_ref);
//            they differ only in which length the caller passes.
double normalize_frequency(double omega, Normalization kind,
                           const NormalizationInput& in);

// Deflection w of an assembled-space vector at parameter (u, v),
// including enrichment contributions.
double evaluate_deflection(const Patch& patch, const DofMap& dofs,
                           const EnrichmentPlan& plan, const CrackModel* crack,
                           const Eigen::VectorXd& full, double u, double v);

} // namespace xiga
