#include "xiga/assembly.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace xiga {

DofMap::DofMap(int n_cp, const EnrichmentPlan& plan) : n_cp_(n_cp) {
    heaviside_base_.assign(n_cp, -1);
    tip_base_.assign(n_cp, -1);
    int next = kPerCp * n_cp;
    for (int cp = 0; cp < n_cp; ++cp)
        if (plan.heaviside_cp[cp]) {
            heaviside_base_[cp] = next;
            next += kPerCp;
        }
    for (int cp = 0; cp < n_cp; ++cp)
        if (plan.tip_cp[cp] >= 0) {
            tip_base_[cp] = next;
            next += kPerCp * kBranch;
        }
    n_total_ = next;
}

namespace {

// One scalar shape function at a quadrature point, split into the
// profile multiplying the translation unknowns (needs second
// derivatives for the curvature from w) and the profile multiplying
// the rotation unknowns (values and first derivatives).
struct ShapeFn {
    std::array<int, 5> dof;
    double tv, tx, ty, txx, tyy, txy;
    double sv, sx, sy;
};

struct EnrichedCpData {
    int cp;
    int local; // index into the element's standard basis arrays
    double h_anchor;                  // step anchor
    std::array<double, 4> t_anchor{}; // branch anchors, translation set
    std::array<double, 4> s_anchor{}; // branch anchors, rotation set
    int tip = -1;
};

// Symmetric factor F with F F^T = A for a positive semidefinite A. The
// first-order theory makes the thickness matrices genuinely singular
// (its shear profile coincides with the linear lever), so a Cholesky
// factorization is not an option here.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& A, const char* what) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success)
        throw std::runtime_error(
            fmt::format("assembly: eigendecomposition of the {} failed", what));
    const double top = es.eigenvalues().cwiseAbs().maxCoeff();
    if (es.eigenvalues().minCoeff() < -1e-10 * top)
        throw std::runtime_error(
            fmt::format("assembly: {} is indefinite", what));
    const Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * d.asDiagonal();
}

} // namespace

AssembledSystem assemble(const Patch& patch, const GradedMaterial& material,
                         double thickness, const PlateTheory& theory,
                         const DofMap& dofs, const EnrichmentPlan& plan,
                         const CrackModel* crack, CutQuadrature quadrature) {
    const ConstitutiveSet cs = integrate_constitutive(material, thickness, theory);
    const Eigen::MatrixXd Lb = psd_factor(cs.Db, "bending stiffness");
    const Eigen::MatrixXd Ls = psd_factor(cs.Ds, "shear stiffness");

    Eigen::Matrix<double, 9, 9> m9 = Eigen::Matrix<double, 9, 9>::Zero();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int i = 0; i < 3; ++i) m9(3 * a + i, 3 * b + i) = cs.m(a, b);
    const Eigen::MatrixXd Lm = psd_factor(m9, "inertia");

    const int n = dofs.n_total();
    AssembledSystem sys;
    sys.K = Eigen::MatrixXd::Zero(n, n);
    sys.M = Eigen::MatrixXd::Zero(n, n);

    const auto grid = element_grid(patch);
    sys.n_elements = static_cast<int>(grid.size());

    const int p = patch.ku().degree(), q = patch.kv().degree();
    const int n_std = (p + 1) * (q + 1);

    std::vector<ShapeFn> fns;
    std::vector<EnrichedCpData> enriched;

    for (size_t e = 0; e < grid.size(); ++e) {
        const auto qpts = element_quadrature(patch, plan, crack,
                                             static_cast<int>(e), quadrature);
        sys.n_quadrature += static_cast<int>(qpts.size());

        // Enriched control points supported on this element, with their
        // anchor values.
        enriched.clear();
        {
            const auto& r = grid[e];
            for (int jv = 0; jv <= q; ++jv)
                for (int iu = 0; iu <= p; ++iu) {
                    const int cp =
                        patch.cp_index(r.span_u - p + iu, r.span_v - q + jv);
                    const int local = jv * (p + 1) + iu;
                    if (plan.heaviside_cp[cp]) {
                        EnrichedCpData d;
                        d.cp = cp;
                        d.local = local;
                        d.h_anchor = anchor_heaviside(*crack, patch.control_point(cp));
                        enriched.push_back(d);
                    } else if (plan.tip_cp[cp] >= 0) {
                        EnrichedCpData d;
                        d.cp = cp;
                        d.local = local;
                        d.tip = plan.tip_cp[cp];
                        const BranchEval be =
                            anchor_branches(crack->tips()[d.tip], crack->scale(),
                                            patch.control_point(cp));
                        d.t_anchor = be.t;
                        d.s_anchor = be.s;
                        enriched.push_back(d);
                    }
                }
        }

        int n_enr_fn = 0;
        for (const auto& d : enriched) n_enr_fn += (d.tip >= 0) ? 4 : 1;
        const int n_fn = n_std + n_enr_fn;
        const int ncol = 5 * n_fn;
        Eigen::MatrixXd Ke = Eigen::MatrixXd::Zero(ncol, ncol);
        Eigen::MatrixXd Me = Eigen::MatrixXd::Zero(ncol, ncol);
        Eigen::MatrixXd B(9, ncol), Bs(2, ncol), Nm(9, ncol);

        fns.assign(n_fn, ShapeFn{});

        for (const auto& qp : qpts) {
            const PhysicalBasis pb = patch.physical(qp.u, qp.v);
            const double wj = qp.w * std::abs(pb.det_j);

            int f = 0;
            for (int k = 0; k < n_std; ++k, ++f) {
                ShapeFn& s = fns[f];
                const int cp = pb.index[k];
                for (int c = 0; c < 5; ++c) s.dof[c] = dofs.standard(cp, c);
                s.tv = pb.r[k];
                s.tx = pb.r_x[k];
                s.ty = pb.r_y[k];
                s.txx = pb.r_xx[k];
                s.tyy = pb.r_yy[k];
                s.txy = pb.r_xy[k];
                s.sv = s.tv;
                s.sx = s.tx;
                s.sy = s.ty;
            }

            int current_h = 0;
            bool have_h = false;
            std::array<bool, 8> have_tip{};
            std::array<BranchEval, 8> tip_eval;
            for (const auto& d : enriched) {
                const int k = d.local;
                if (d.tip < 0) {
                    if (!have_h) {
                        // Conforming rules never place a point on the
                        // crack line, so an on-line point there is a
                        // layout bug worth an exception; plain Gauss
                        // rows can land on it legitimately.
                        current_h = quadrature == CutQuadrature::FullGauss
                                        ? anchor_heaviside(*crack, pb.x)
                                        : crack->heaviside(pb.x);
                        have_h = true;
                    }
                    ShapeFn& s = fns[f++];
                    const int base = dofs.heaviside_base(d.cp);
                    for (int c = 0; c < 5; ++c) s.dof[c] = base + c;
                    const double jump = current_h - d.h_anchor;
                    s.tv = pb.r[k] * jump;
                    s.tx = pb.r_x[k] * jump;
                    s.ty = pb.r_y[k] * jump;
                    s.txx = pb.r_xx[k] * jump;
                    s.tyy = pb.r_yy[k] * jump;
                    s.txy = pb.r_xy[k] * jump;
                    s.sv = s.tv;
                    s.sx = s.tx;
                    s.sy = s.ty;
                } else {
                    if (static_cast<size_t>(d.tip) >= have_tip.size())
                        throw std::runtime_error("assembly: too many crack tips");
                    if (!have_tip[d.tip]) {
                        tip_eval[d.tip] =
                            eval_branches(crack->tips()[d.tip], pb.x);
                        have_tip[d.tip] = true;
                    }
                    const BranchEval& be = tip_eval[d.tip];
                    const int base = dofs.tip_base(d.cp);
                    for (int kb = 0; kb < 4; ++kb) {
                        ShapeFn& s = fns[f++];
                        for (int c = 0; c < 5; ++c) s.dof[c] = base + 5 * kb + c;
                        const double gt = be.t[kb] - d.t_anchor[kb];
                        s.tv = pb.r[k] * gt;
                        s.tx = pb.r_x[k] * gt + pb.r[k] * be.t_x[kb];
                        s.ty = pb.r_y[k] * gt + pb.r[k] * be.t_y[kb];
                        s.txx = pb.r_xx[k] * gt + 2.0 * pb.r_x[k] * be.t_x[kb] +
                                pb.r[k] * be.t_xx[kb];
                        s.tyy = pb.r_yy[k] * gt + 2.0 * pb.r_y[k] * be.t_y[kb] +
                                pb.r[k] * be.t_yy[kb];
                        s.txy = pb.r_xy[k] * gt + pb.r_x[k] * be.t_y[kb] +
                                pb.r_y[k] * be.t_x[kb] + pb.r[k] * be.t_xy[kb];
                        const double gs = be.s[kb] - d.s_anchor[kb];
                        s.sv = pb.r[k] * gs;
                        s.sx = pb.r_x[k] * gs + pb.r[k] * be.s_x[kb];
                        s.sy = pb.r_y[k] * gs + pb.r[k] * be.s_y[kb];
                    }
                }
            }

            B.setZero();
            Bs.setZero();
            Nm.setZero();
            for (int kf = 0; kf < n_fn; ++kf) {
                const ShapeFn& s = fns[kf];
                const int cu = 5 * kf, cv = cu + 1, cw = cu + 2, cbx = cu + 3,
                          cby = cu + 4;
                // membrane strain
                B(0, cu) = s.tx;
                B(1, cv) = s.ty;
                B(2, cu) = s.ty;
                B(2, cv) = s.tx;
                // curvature carried by w
                B(3, cw) = -s.txx;
                B(4, cw) = -s.tyy;
                B(5, cw) = -2.0 * s.txy;
                // curvature carried by the shear rotations
                B(6, cbx) = s.sx;
                B(7, cby) = s.sy;
                B(8, cbx) = s.sy;
                B(8, cby) = s.sx;
                // transverse shear (rotation values only)
                Bs(0, cbx) = s.sv;
                Bs(1, cby) = s.sv;
                // inertia groups
                Nm(0, cu) = s.tv;
                Nm(1, cv) = s.tv;
                Nm(2, cw) = s.tv;
                Nm(3, cw) = -s.tx;
                Nm(4, cw) = -s.ty;
                Nm(6, cbx) = s.sv;
                Nm(7, cby) = s.sv;
            }

            // K += wj (B' Db B + Bs' Ds Bs), M += wj N' m N, written as
            // rank updates on the Cholesky factors.
            Ke.selfadjointView<Eigen::Lower>().rankUpdate(
                (Lb.transpose() * B).transpose(), wj);
            Ke.selfadjointView<Eigen::Lower>().rankUpdate(
                (Ls.transpose() * Bs).transpose(), wj);
            Me.selfadjointView<Eigen::Lower>().rankUpdate(
                (Lm.transpose() * Nm).transpose(), wj);
        }

        const Eigen::MatrixXd KeF = Ke.selfadjointView<Eigen::Lower>();
        const Eigen::MatrixXd MeF = Me.selfadjointView<Eigen::Lower>();

        // Scatter; column 5*kf+c of the element matrices owns global
        // dof fns[kf].dof[c].
        for (int af = 0; af < n_fn; ++af)
            for (int ac = 0; ac < 5; ++ac) {
                const int ga = fns[af].dof[ac];
                for (int bf = 0; bf < n_fn; ++bf)
                    for (int bc = 0; bc < 5; ++bc) {
                        const int gb = fns[bf].dof[bc];
                        sys.K(ga, gb) += KeF(5 * af + ac, 5 * bf + bc);
                        sys.M(ga, gb) += MeF(5 * af + ac, 5 * bf + bc);
                    }
            }
    }
    return sys;
}

} // namespace xiga
