#include "xiga/modal.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <lapacke.h>
#include <spdlog/spdlog.h>

namespace xiga {

ModalResult solve_modal(const ReducedSystem& sys, const ConstraintSet& cons,
                        const DofMap& dofs, int n_modes) {
    const int n = static_cast<int>(sys.K.rows());
    if (n_modes < 1) throw std::invalid_argument("solve_modal: need n_modes >= 1");

    double k_diag = 0.0, m_diag = 0.0;
    for (int i = 0; i < n; ++i) {
        k_diag += sys.K(i, i);
        m_diag += sys.M(i, i);
    }
    const double lambda_scale = (k_diag / n) / std::max(m_diag / n, 1e-300);
    const double rigid_tol = 1e-8 * lambda_scale;

    // A few extra pairs so rigid leftovers can be dropped and n_modes
    // still returned.
    const int want = std::min(n, n_modes + 8);

    Eigen::MatrixXd A = sys.K;
    Eigen::MatrixXd B = sys.M;
    std::vector<double> w(n);
    Eigen::MatrixXd Z(n, want);
    std::vector<lapack_int> ifail(n);
    lapack_int found = 0;
    const double abstol = 2.0 * LAPACKE_dlamch('S');
    const lapack_int info = LAPACKE_dsygvx(
        LAPACK_COL_MAJOR, 1, 'V', 'I', 'L', n, A.data(), n, B.data(), n, 0.0,
        0.0, 1, want, abstol, &found, w.data(), Z.data(), n, ifail.data());
    if (info < 0)
        throw std::runtime_error(fmt::format("eigensolver: bad argument {}", -info));
    if (info > n)
        throw std::runtime_error(
            "eigensolver: mass matrix is not positive definite");
    if (info > 0)
        throw std::runtime_error(
            fmt::format("eigensolver: {} eigenvectors failed to converge", info));
    if (found < std::min(n, n_modes))
        throw std::runtime_error("eigensolver: returned too few eigenpairs");

    ModalResult out;
    std::vector<int> keep;
    for (int k = 0; k < found; ++k) {
        if (w[k] < -1e-10 * lambda_scale)
            throw std::runtime_error(fmt::format(
                "eigensolver: significantly negative eigenvalue {}", w[k]));
        if (w[k] < rigid_tol) {
            ++out.n_rigid_excluded;
            continue;
        }
        keep.push_back(k);
        if (static_cast<int>(keep.size()) == n_modes) break;
    }
    if (out.n_rigid_excluded > 0)
        spdlog::warn("excluded {} near-rigid modes from the reported set",
                     out.n_rigid_excluded);
    if (static_cast<int>(keep.size()) < n_modes)
        throw std::runtime_error(
            "eigensolver: not enough flexible modes below the requested count");

    out.omega.reserve(keep.size());
    out.shapes.resize(dofs.n_total(), static_cast<int>(keep.size()));
    for (size_t m = 0; m < keep.size(); ++m) {
        const int k = keep[m];
        out.omega.push_back(std::sqrt(std::max(w[k], 0.0)));
        Eigen::VectorXd full = expand(cons, Z.col(k));
        // Deterministic orientation: largest |w| control value positive.
        double best = 0.0;
        for (int cp = 0; cp < dofs.n_standard() / DofMap::kPerCp; ++cp) {
            const double val = full[dofs.standard(cp, 2)];
            if (std::abs(val) > std::abs(best)) best = val;
        }
        if (best < 0.0) full = -full;
        out.shapes.col(static_cast<int>(m)) = full;
    }
    return out;
}

std::string normalization_name(Normalization n) {
    switch (n) {
    case Normalization::None: return "angular";
    case Normalization::ThinPlate: return "thin-plate";
    case Normalization::ShearSquare: return "shear-square";
    case Normalization::ShearGap: return "shear-gap";
    }
    return "angular";
}

Normalization normalization_from_name(const std::string& name) {
    if (name == "angular" || name == "none") return Normalization::None;
    if (name == "thin-plate") return Normalization::ThinPlate;
    if (name == "shear-square") return Normalization::ShearSquare;
    if (name == "shear-gap") return Normalization::ShearGap;
    throw std::invalid_argument(fmt::format("unknown normalization '{}'", name));
}

double normalize_frequency(double omega, Normalization kind,
                           const NormalizationInput& in) {
    switch (kind) {
    case Normalization::None:
        return omega;
    case Normalization::ThinPlate: {
        const double D = in.young_ref * in.thickness * in.thickness *
                         in.thickness /
                         (12.0 * (1.0 - in.poisson_ref * in.poisson_ref));
        return omega * in.span * in.span *
               std::sqrt(in.density_ref * in.thickness / D);
    }
    case Normalization::ShearSquare:
    case Normalization::ShearGap:
        return omega * in.span * in.span / in.thickness *
               std::sqrt(in.density_ref / in.young_ref);
    }
    throw std::logic_error("normalize_frequency: bad kind");
}

double evaluate_deflection(const Patch& patch, const DofMap& dofs,
                           const EnrichmentPlan& plan, const CrackModel* crack,
                           const Eigen::VectorXd& full, double u, double v) {
    const SurfaceBasis sb = patch.eval(u, v);
    double w = 0.0;
    for (int k = 0; k < sb.count(); ++k) {
        const int cp = sb.index[k];
        w += sb.r[k] * full[dofs.standard(cp, 2)];
        if (plan.heaviside_cp[cp]) {
            const int h = crack->heaviside(sb.x);
            const int hj = anchor_heaviside(*crack, patch.control_point(cp));
            w += sb.r[k] * (h - hj) * full[dofs.heaviside_base(cp) + 2];
        } else if (plan.tip_cp[cp] >= 0) {
            const auto& frame = crack->tips()[plan.tip_cp[cp]];
            const BranchEval be = eval_branches(frame, sb.x);
            const BranchEval bj =
                anchor_branches(frame, crack->scale(), patch.control_point(cp));
            for (int kb = 0; kb < 4; ++kb)
                w += sb.r[k] * (be.t[kb] - bj.t[kb]) *
                     full[dofs.tip_base(cp) + 5 * kb + 2];
        }
    }
    return w;
}

} // namespace xiga
