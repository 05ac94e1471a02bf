// Acceptance gate for the cracked graded plate solver. Every shipped
// claim is re-verified here at its pinned tolerance: one PASS/FAIL
// line per criterion on stdout, progress notes on stderr, exit status
// equal to the number of failed criteria.
//
// The published sequences this gate compares against were transcribed
// into data/reference; the handful of values a faithful implementation
// cannot hit (and why) are analyzed in the project decision notes.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "xiga/assembly.hpp"
#include "xiga/boundary.hpp"
#include "xiga/case_config.hpp"
#include "xiga/crack.hpp"
#include "xiga/material.hpp"
#include "xiga/modal.hpp"
#include "xiga/patch.hpp"

namespace {

using namespace xiga;

std::string data_path(const std::string& sub) {
    return std::string(XIGA_DATA_DIR) + "/" + sub;
}

// Runs bundled cases on demand and keeps the results for later
// criteria; the matrices themselves are rebuilt where needed so the
// cache stays small.
class Runner {
public:
    const CaseRun& run(const std::string& name) {
        auto it = cache_.find(name);
        if (it != cache_.end()) return it->second;
        const auto cfg =
            CaseConfig::from_file(data_path("cases/" + name + ".json"));
        const auto t0 = std::chrono::steady_clock::now();
        CaseRun r = run_case(cfg);
        const std::chrono::duration<double> dt =
            std::chrono::steady_clock::now() - t0;
        wall_[name] = dt.count();
        std::fprintf(stderr, "  [%-26s %6.1f s  modes", name.c_str(),
                     dt.count());
        for (double v : r.normalized) std::fprintf(stderr, " %.4f", v);
        std::fprintf(stderr, "]\n");
        return cache_.emplace(name, std::move(r)).first->second;
    }

    double wall_seconds(const std::string& name) const {
        return wall_.at(name);
    }

    const std::map<std::string, CaseRun>& completed() const { return cache_; }

private:
    std::map<std::string, CaseRun> cache_;
    std::map<std::string, double> wall_;
};

struct TableOutcome {
    int checked = 0;
    int failed = 0;
    double worst_ratio = 0.0; // |rel err| / tolerance
    std::string worst;

    void add(const std::string& case_name, int mode, double got,
             double want, double tol) {
        ++checked;
        const double rel = (got - want) / want;
        if (std::abs(rel) > tol) ++failed;
        const double ratio = std::abs(rel) / tol;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst = fmt::format("{} mode {}: {:.4f} vs {:.4f} ({:+.2f}%, tol {:g}%)",
                                case_name, mode, got, want, 100 * rel,
                                100 * tol);
        }
    }

    bool pass() const { return failed == 0; }
    std::string detail() const {
        return fmt::format("{}/{} entries in tolerance; worst {}",
                           checked - failed, checked, worst);
    }
};

// Compares every reference entry whose case name matches the filter.
template <typename Filter>
TableOutcome check_table(Runner& runner, const ReferenceTable& table,
                         Filter&& want_case) {
    TableOutcome out;
    for (const auto& e : table.entries) {
        if (!want_case(e.case_name)) continue;
        const CaseRun& run = runner.run(e.case_name);
        if (e.mode > static_cast<int>(run.normalized.size())) {
            ++out.checked;
            ++out.failed;
            out.worst = fmt::format("{} mode {} missing", e.case_name, e.mode);
            out.worst_ratio = 1e30;
            continue;
        }
        out.add(e.case_name, e.mode, run.normalized[e.mode - 1], e.value,
                e.tolerance);
    }
    return out;
}

void report(int index, const std::string& label, bool pass,
            const std::string& detail) {
    std::printf("criterion %d (%s): %s - %s\n", index, label.c_str(),
                pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

// ---------------------------------------------------------------- C1

bool intact_thin_plate(Runner& runner) {
    const std::string name = "center-crack-tsdt-a00";
    const CaseRun& run = runner.run(name);
    const double seconds = runner.wall_seconds(name);

    const std::array<double, 4> want = {19.7392, 49.35, 49.35, 78.96};
    const double tol = 0.005;
    bool ok = run.normalized.size() >= want.size();
    double worst = 0.0;
    for (size_t k = 0; ok && k < want.size(); ++k) {
        const double rel = std::abs(run.normalized[k] - want[k]) / want[k];
        worst = std::max(worst, rel);
        if (rel > tol) ok = false;
    }
    const bool fast = seconds < 60.0;
    report(1, "intact thin plate", ok && fast,
           fmt::format("largest deviation {:.3f}% (tol 0.5%), solved in {:.1f} s "
                       "(limit 60 s)",
                       100 * worst, seconds));
    return ok && fast;
}

// ---------------------------------------------------------------- C2

bool center_crack_sweep(Runner& runner, const ReferenceTable& table) {
    const auto out = check_table(runner, table, [](const std::string& c) {
        return c != "center-crack-tsdt-a00"; // the intact row is criterion 1
    });
    report(2, "center crack sweep", out.pass(), out.detail());
    return out.pass();
}

// ------------------------------------------------------------- C3, C4

bool edge_crack_family(Runner& runner, const ReferenceTable& table,
                       int index, const std::string& label,
                       const std::string& prefix) {
    const auto out = check_table(runner, table, [&](const std::string& c) {
        return c.rfind(prefix, 0) == 0;
    });
    report(index, label, out.pass(), out.detail());
    return out.pass();
}

// ---------------------------------------------------------------- C5

bool cracked_disk(Runner& runner, const ReferenceTable& table) {
    const auto out =
        check_table(runner, table, [](const std::string&) { return true; });

    // Published plain-FEM enriched results on a 29x29 grid; the
    // isogeometric numbers must stay at or below them, and raising the
    // degree must not raise a frequency.
    const std::map<std::string, std::array<double, 5>> xfem = {
        {"n0", {2.7650, 4.7604, 6.2044, 9.0369, 9.5031}},
        {"n0p2", {2.3184, 4.0077, 5.2068, 7.5894, 7.9838}},
        {"n1", {1.9005, 3.2907, 4.2685, 6.2203, 6.5464}},
        {"n5", {1.7037, 2.9200, 3.8097, 5.5346, 5.8165}},
        {"n10", {1.6303, 2.7887, 3.6433, 5.2917, 5.5586}},
    };
    int order_failures = 0;
    std::string order_worst;
    for (const auto& [tag, limit] : xfem) {
        const auto& p3 = runner.run("disk-clamped-p3-" + tag).normalized;
        const auto& p2 = runner.run("disk-clamped-p2-" + tag).normalized;
        for (int m = 0; m < 5; ++m) {
            const bool ordered = p3[m] <= p2[m] * (1 + 1e-9) &&
                                 p2[m] <= limit[m] * (1 + 1e-9);
            if (!ordered) {
                ++order_failures;
                order_worst = fmt::format("{} mode {}: p3 {:.4f}, p2 {:.4f}, "
                                          "reference {:.4f}",
                                          tag, m + 1, p3[m], p2[m], limit[m]);
            }
        }
    }
    const bool pass = out.pass() && order_failures == 0;
    std::string detail = out.detail();
    detail += order_failures == 0
                  ? "; degree ordering holds at every mode"
                  : fmt::format("; ordering broken at {} entries, e.g. {}",
                                order_failures, order_worst);
    report(5, "cracked disk", pass, detail);
    return pass;
}

// ---------------------------------------------------------------- C6

bool cracked_annulus(Runner& runner) {
    const std::vector<std::pair<std::string, double>> spots = {
        {"annulus-rh10-rr0p5", 0.8621},
        {"annulus-rh5-rr0p2", 1.0877},
        {"annulus-rh100-rr0p8", 0.7646},
    };
    const double tol = 0.03;
    bool ok = true;
    double worst = 0.0;
    std::string worst_name;
    for (const auto& [name, want] : spots) {
        const double got = runner.run(name).normalized[0];
        const double rel = std::abs(got - want) / want;
        if (rel > worst) {
            worst = rel;
            worst_name = name;
        }
        if (rel > tol) ok = false;
    }

    // Widening the hole at fixed outer radius softens every mode.
    const std::vector<std::string> series = {
        "annulus-rh10-rr0", "annulus-rh10-rr0p2", "annulus-rh10-rr0p5",
        "annulus-rh10-rr0p8"};
    int monotone_breaks = 0;
    for (size_t s = 1; s < series.size(); ++s) {
        const auto& prev = runner.run(series[s - 1]).normalized;
        const auto& next = runner.run(series[s]).normalized;
        for (int m = 0; m < 5; ++m)
            if (!(next[m] < prev[m])) ++monotone_breaks;
    }
    const bool pass = ok && monotone_breaks == 0;
    report(6, "cracked annulus", pass,
           fmt::format("worst fundamental deviation {:.2f}% at {} (tol 3%); "
                       "{} monotonicity breaks over the hole-size series",
                       100 * worst, worst_name, monotone_breaks));
    return pass;
}

// ---------------------------------------------------------------- C7

struct PropertyCheck {
    std::string name;
    bool pass;
};

// Partition of unity and derivative sums on a rational patch.
PropertyCheck partition_of_unity() {
    const Patch patch = circular_patch(1.0, 3, 6);
    bool ok = true;
    for (double u = 0.05; u < 1.0; u += 0.15) {
        for (double v = 0.05; v < 1.0; v += 0.15) {
            const SurfaceBasis b = patch.eval(u, v);
            double s = 0, su = 0, sv = 0, suu = 0, svv = 0, suv = 0;
            double mag = 1.0;
            for (int k = 0; k < b.count(); ++k) {
                s += b.r[k];
                su += b.r_u[k];
                sv += b.r_v[k];
                suu += b.r_uu[k];
                svv += b.r_vv[k];
                suv += b.r_uv[k];
                mag = std::max({mag, std::abs(b.r_u[k]), std::abs(b.r_uu[k]),
                                std::abs(b.r_vv[k])});
            }
            ok = ok && std::abs(s - 1.0) < 1e-10;
            for (double d : {su, sv, suu, svv, suv})
                ok = ok && std::abs(d) < 1e-10 * mag;
        }
    }
    return {"partition of unity", ok};
}

// Finite differences against the analytic derivatives: the geometry
// map, the physical basis gradients, and the tip enrichment set.
PropertyCheck finite_difference_agreement() {
    bool ok = true;
    const double step = 1e-6;
    const double tol = 1e-5;

    const Patch disk = circular_patch(1.0, 2, 5);
    for (const auto& [u, v] : std::vector<std::pair<double, double>>{
             {0.314, 0.562}, {0.711, 0.277}, {0.137, 0.895}}) {
        const SurfaceBasis b = disk.eval(u, v);
        const Eigen::Vector2d xu_fd =
            (disk.map_point(u + step, v) - disk.map_point(u - step, v)) /
            (2 * step);
        const Eigen::Vector2d xv_fd =
            (disk.map_point(u, v + step) - disk.map_point(u, v - step)) /
            (2 * step);
        ok = ok && (b.x_u - xu_fd).norm() < tol * b.x_u.norm();
        ok = ok && (b.x_v - xv_fd).norm() < tol * b.x_v.norm();

        // Physical gradients recovered purely from finite differences.
        const SurfaceBasis bu0 = disk.eval(u - step, v);
        const SurfaceBasis bu1 = disk.eval(u + step, v);
        const SurfaceBasis bv0 = disk.eval(u, v - step);
        const SurfaceBasis bv1 = disk.eval(u, v + step);
        const PhysicalBasis p = disk.physical(u, v);
        Eigen::Matrix2d J;
        J << b.x_u.x(), b.x_v.x(), b.x_u.y(), b.x_v.y();
        double scale = 0, err = 0;
        for (int k = 0; k < b.count(); ++k) {
            const double ru_fd = (bu1.r[k] - bu0.r[k]) / (2 * step);
            const double rv_fd = (bv1.r[k] - bv0.r[k]) / (2 * step);
            const Eigen::Vector2d g =
                J.transpose().colPivHouseholderQr().solve(
                    Eigen::Vector2d(ru_fd, rv_fd));
            err = std::max({err, std::abs(g.x() - p.r_x[k]),
                            std::abs(g.y() - p.r_y[k])});
            scale = std::max({scale, std::abs(p.r_x[k]), std::abs(p.r_y[k])});
        }
        ok = ok && err < tol * scale;
    }

    // Tip enrichment gradients, sampled off the crack line.
    const Patch square = square_patch(1.0, 1.0, 2, 8);
    const CrackModel crack = CrackModel::on_patch(
        square, Eigen::Vector2d(0.25, 0.5), Eigen::Vector2d(0.75, 0.5));
    const TipFrame& frame = crack.tips().front();
    for (const Eigen::Vector2d& x :
         {Eigen::Vector2d(0.81, 0.57), Eigen::Vector2d(0.69, 0.44)}) {
        const BranchEval e = eval_branches(frame, x);
        const BranchEval ex0 =
            eval_branches(frame, x - Eigen::Vector2d(step, 0));
        const BranchEval ex1 =
            eval_branches(frame, x + Eigen::Vector2d(step, 0));
        const BranchEval ey0 =
            eval_branches(frame, x - Eigen::Vector2d(0, step));
        const BranchEval ey1 =
            eval_branches(frame, x + Eigen::Vector2d(0, step));
        for (int k = 0; k < 4; ++k) {
            const double sc =
                std::max({1.0, std::abs(e.t_x[k]), std::abs(e.t_y[k]),
                          std::abs(e.s_x[k]), std::abs(e.s_y[k])});
            ok = ok && std::abs((ex1.t[k] - ex0.t[k]) / (2 * step) -
                                e.t_x[k]) < tol * sc;
            ok = ok && std::abs((ey1.t[k] - ey0.t[k]) / (2 * step) -
                                e.t_y[k]) < tol * sc;
            ok = ok && std::abs((ex1.s[k] - ex0.s[k]) / (2 * step) -
                                e.s_x[k]) < tol * sc;
            ok = ok && std::abs((ey1.s[k] - ey0.s[k]) / (2 * step) -
                                e.s_y[k]) < tol * sc;
        }
    }
    return {"finite difference agreement", ok};
}

// Homogeneous plate: the section constants collapse to the classical
// membrane and bending stiffness, with no coupling.
PropertyCheck homogeneous_identities() {
    const Constituent steel{200e9, 0.3, 7850};
    const GradedMaterial mat(steel, steel, 1.0, Homogenization::RuleOfMixture);
    const double h = 0.02;
    const ConstitutiveSet cs =
        integrate_constitutive(mat, h, PlateTheory::third_order());
    const double a11 = steel.young * h / (1 - 0.09);
    const double d11 = steel.young * h * h * h / (12 * (1 - 0.09));
    bool ok = std::abs(cs.Db(0, 0) - a11) < 1e-12 * a11;
    ok = ok && std::abs(cs.Db(3, 3) - d11) < 1e-12 * d11;
    // Membrane-bending coupling blocks vanish identically.
    ok = ok && cs.Db.block<3, 3>(0, 3).cwiseAbs().maxCoeff() < 1e-12 * a11 * h;
    ok = ok && cs.Db.block<3, 3>(0, 6).cwiseAbs().maxCoeff() < 1e-12 * a11 * h;
    return {"homogeneous identities", ok};
}

// Linear rule-of-mixture grading integrates to closed forms.
PropertyCheck mixture_integrals() {
    const Constituent ceramic = material_preset("alumina");
    const Constituent metal = material_preset("aluminum");
    const GradedMaterial mat(ceramic, metal, 1.0,
                             Homogenization::RuleOfMixture);
    const double h = 0.1;
    const ConstitutiveSet cs =
        integrate_constitutive(mat, h, PlateTheory::third_order());
    const double q = 1.0 / (1 - 0.09);
    const double a11 = q * h * (ceramic.young + metal.young) / 2;
    const double b11 = q * h * h * (ceramic.young - metal.young) / 12;
    const double d11 = q * h * h * h * (ceramic.young + metal.young) / 24;
    const double i1 = h * (ceramic.density + metal.density) / 2;
    bool ok = std::abs(cs.Db(0, 0) - a11) < 1e-10 * a11;
    ok = ok && std::abs(cs.Db(0, 3) - b11) < 1e-10 * std::abs(b11);
    ok = ok && std::abs(cs.Db(3, 3) - d11) < 1e-10 * d11;
    ok = ok && std::abs(cs.m(0, 0) - i1) < 1e-10 * i1;
    return {"mixture integrals", ok};
}

// Interaction-aware homogenization is softer than the linear rule
// inside the section for every finite positive exponent.
PropertyCheck homogenization_ordering() {
    const Constituent ceramic = material_preset("alumina");
    const Constituent metal = material_preset("aluminum");
    const double h = 0.1;
    bool ok = true;
    for (double n : {0.5, 1.0, 5.0}) {
        const GradedMaterial mt(ceramic, metal, n, Homogenization::MoriTanaka);
        const GradedMaterial rom(ceramic, metal, n,
                                 Homogenization::RuleOfMixture);
        for (double z : {-0.03, 0.0, 0.04})
            ok = ok && mt.young(z, h) < rom.young(z, h);
    }
    return {"homogenization ordering", ok};
}

// A crack that enriches nothing must leave the operators untouched.
PropertyCheck empty_crack_reduction() {
    const Patch patch = square_patch(1.0, 1.0, 2, 5);
    const GradedMaterial mat(material_preset("aluminum"),
                             material_preset("aluminum"), 1.0,
                             Homogenization::RuleOfMixture);
    const PlateTheory theory = PlateTheory::third_order();
    const CrackModel crack = CrackModel::on_patch(
        patch, Eigen::Vector2d(0.3, 0.4), Eigen::Vector2d(0.7, 0.4));
    const EnrichmentPlan plain = no_enrichment(patch);
    const DofMap dofs(patch.num_control_points(), plain);
    const AssembledSystem with =
        assemble(patch, mat, 0.02, theory, dofs, plain, &crack);
    const AssembledSystem without =
        assemble(patch, mat, 0.02, theory, dofs, plain, nullptr);
    const double kref = without.K.cwiseAbs().maxCoeff();
    const double mref = without.M.cwiseAbs().maxCoeff();
    const bool ok = (with.K - without.K).cwiseAbs().maxCoeff() < 1e-14 * kref &&
                    (with.M - without.M).cwiseAbs().maxCoeff() < 1e-14 * mref;
    return {"empty crack reduction", ok};
}

// Reduced-space residual of a reported mode, evaluated by binning the
// assembled-space residual through the constraint map.
double mode_residual(const AssembledSystem& sys, const ConstraintSet& cons,
                     const Eigen::VectorXd& shape, double omega) {
    const Eigen::VectorXd kx = sys.K * shape;
    const Eigen::VectorXd rx = kx - omega * omega * (sys.M * shape);
    Eigen::VectorXd rk = Eigen::VectorXd::Zero(cons.n_reduced);
    Eigen::VectorXd rr = Eigen::VectorXd::Zero(cons.n_reduced);
    for (int i = 0; i < static_cast<int>(cons.map.size()); ++i) {
        if (cons.map[i] < 0) continue;
        rk[cons.map[i]] += kx[i];
        rr[cons.map[i]] += rx[i];
    }
    return rr.norm() / rk.norm();
}

// Every mode reported by every case this gate ran satisfies the
// eigenproblem tightly.
PropertyCheck eigen_residuals(Runner& runner) {
    bool ok = true;
    double worst = 0.0;
    std::string worst_name;
    for (const auto& [name, run] : runner.completed()) {
        const AssembledSystem sys = assemble(
            run.patch,
            GradedMaterial(run.config.ceramic, run.config.metal,
                           run.config.exponent, run.config.scheme),
            run.config.thickness, run.config.theory, run.dofs, run.plan,
            run.crack ? &*run.crack : nullptr, run.config.quadrature);
        std::vector<ConstraintSet> families;
        families.push_back(
            build_constraints(run.patch, run.dofs, run.config.boundary, sys));
        if (run.config.mirror_both_parities) {
            BoundarySpec anti = run.config.boundary;
            for (auto& e : anti.edge)
                if (e == EdgeCondition::Symmetry)
                    e = EdgeCondition::AntiSymmetry;
            families.push_back(
                build_constraints(run.patch, run.dofs, anti, sys));
        }
        for (size_t k = 0; k < run.modal.omega.size(); ++k) {
            double best = 1e30;
            for (const auto& cons : families)
                best = std::min(best,
                                mode_residual(sys, cons, run.modal.shapes.col(k),
                                              run.modal.omega[k]));
            if (best > worst) {
                worst = best;
                worst_name = fmt::format("{} mode {}", name, k + 1);
            }
            ok = ok && best < 1e-8;
        }
        std::fprintf(stderr, "  [residuals %-26s worst so far %.2e]\n",
                     name.c_str(), worst);
    }
    std::fprintf(stderr, "  [eigen residual worst: %.3e at %s]\n", worst,
                 worst_name.c_str());
    return {"eigen residuals", ok};
}

// Frequencies fall as the crack grows and as the metal fraction rises.
PropertyCheck monotone_trends(Runner& runner) {
    bool ok = true;
    const std::vector<std::string> crack_series = {
        "center-crack-tsdt-a00", "center-crack-tsdt-a02",
        "center-crack-tsdt-a04", "center-crack-tsdt-a05",
        "center-crack-tsdt-a06", "center-crack-tsdt-a08",
        "center-crack-tsdt-a10"};
    for (size_t s = 1; s < crack_series.size(); ++s) {
        const auto& prev = runner.run(crack_series[s - 1]).normalized;
        const auto& next = runner.run(crack_series[s]).normalized;
        for (int m = 0; m < 5; ++m) ok = ok && next[m] < prev[m];
    }
    const std::vector<std::string> grading_series = {
        "edge-crack-ss-tsdt-n0", "edge-crack-ss-tsdt-n0p2",
        "edge-crack-ss-tsdt-n1", "edge-crack-ss-tsdt-n5",
        "edge-crack-ss-tsdt-n10"};
    for (size_t s = 1; s < grading_series.size(); ++s) {
        const auto& prev = runner.run(grading_series[s - 1]).normalized;
        const auto& next = runner.run(grading_series[s]).normalized;
        for (int m = 0; m < 5; ++m) ok = ok && next[m] < prev[m];
    }
    return {"monotone trends", ok};
}

// The normalized thin-plate frequency stops moving once the plate is
// thin: spans-to-thickness 100 and 1000 agree within a percent.
PropertyCheck thin_plateau(Runner& runner) {
    const double thin = runner.run("center-crack-tsdt-a00").normalized[0];
    CaseConfig cfg = CaseConfig::from_file(
        data_path("cases/center-crack-tsdt-a00.json"));
    cfg.name = "center-crack-tsdt-a00-lh100";
    cfg.thickness = 0.01;
    cfg.n_modes = 1;
    const CaseRun thick = run_case(cfg);
    const double rel = std::abs(thick.normalized[0] - thin) / thin;
    std::fprintf(stderr, "  [thin plateau: %.5f at L/h=100, %.5f at 1000]\n",
                 thick.normalized[0], thin);
    return {"thin plateau", rel < 0.01};
}

bool property_suite(Runner& runner) {
    std::vector<PropertyCheck> checks;
    checks.push_back(partition_of_unity());
    checks.push_back(finite_difference_agreement());
    checks.push_back(homogeneous_identities());
    checks.push_back(mixture_integrals());
    checks.push_back(homogenization_ordering());
    checks.push_back(empty_crack_reduction());
    checks.push_back(monotone_trends(runner));
    checks.push_back(thin_plateau(runner));
    checks.push_back(eigen_residuals(runner));

    std::string failing;
    for (const auto& c : checks)
        if (!c.pass) failing += (failing.empty() ? "" : ", ") + c.name;
    const bool pass = failing.empty();
    report(7, "property suite", pass,
           pass ? fmt::format("all {} checks hold", checks.size())
                : "failing: " + failing);
    return pass;
}

// ---------------------------------------------------------------- C8

bool mesh_convergence(Runner& runner) {
    const double target = 17.8989;
    const std::vector<std::string> series = {"center-crack-tsdt-a05-m09",
                                             "center-crack-tsdt-a05-m15",
                                             "center-crack-tsdt-a05"};
    std::vector<double> got, err;
    for (const auto& name : series) {
        got.push_back(runner.run(name).normalized[0]);
        err.push_back(std::abs(got.back() - target) / target);
    }
    const bool shrinking = err[0] > err[1] && err[1] > err[2];
    const bool from_above =
        got[0] > target && got[1] > target && got[2] > target;
    report(8, "mesh convergence", shrinking && from_above,
           fmt::format("fundamental {:.4f} / {:.4f} / {:.4f} vs {:.4f}; error "
                       "{}, approach {}",
                       got[0], got[1], got[2], target,
                       shrinking ? "shrinking" : "not shrinking",
                       from_above ? "from above" : "not from above"));
    return shrinking && from_above;
}

} // namespace

int main() {
    Runner runner;
    int failures = 0;

    const auto center = ReferenceTable::from_file(
        data_path("reference/center-crack.json"));
    const auto edge_ss = ReferenceTable::from_file(
        data_path("reference/edge-crack-ss.json"));
    const auto edge_cant = ReferenceTable::from_file(
        data_path("reference/edge-crack-cant.json"));
    const auto disk = ReferenceTable::from_file(
        data_path("reference/disk-clamped.json"));

    failures += !intact_thin_plate(runner);
    failures += !center_crack_sweep(runner, center);
    failures += !edge_crack_family(runner, edge_ss, 3,
                                   "edge crack, simply supported",
                                   "edge-crack-ss-tsdt");
    failures += !edge_crack_family(runner, edge_cant, 4,
                                   "edge crack, cantilever",
                                   "edge-crack-cant-tsdt");
    failures += !cracked_disk(runner, disk);
    failures += !cracked_annulus(runner);
    failures += !property_suite(runner);
    failures += !mesh_convergence(runner);

    std::printf("%d of 8 criteria pass\n", 8 - failures);
    return failures;
}
