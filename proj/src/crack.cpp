#include "xiga/crack.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace xiga {

std::pair<double, double> TipFrame::polar(const Eigen::Vector2d& x) const {
    const Eigen::Vector2d d = x - tip;
    const double lx = d.dot(tangent);
    const double ly = d.dot(normal);
    return {std::hypot(lx, ly), std::atan2(ly, lx)};
}

namespace {

struct ThetaFun {
    double g, gp, gpp; // value and first two theta derivatives
};

// F = r^alpha * g(theta) via the closed-form polar derivative chain.
struct PolarDeriv {
    double f, fx, fy, fxx, fyy, fxy;
};

PolarDeriv polar_derivs(double r, double theta, double alpha, const ThetaFun& t) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double ra = std::pow(r, alpha);
    const double ra1 = std::pow(r, alpha - 1.0);
    const double ra2 = std::pow(r, alpha - 2.0);
    const double A = alpha * c * t.g - s * t.gp;
    const double B = alpha * s * t.g + c * t.gp;
    const double Ap = -alpha * s * t.g + (alpha - 1.0) * c * t.gp - s * t.gpp;
    const double Bp = alpha * c * t.g + (alpha - 1.0) * s * t.gp + c * t.gpp;
    PolarDeriv out;
    out.f = ra * t.g;
    out.fx = ra1 * A;
    out.fy = ra1 * B;
    out.fxx = ra2 * ((alpha - 1.0) * c * A - s * Ap);
    out.fxy = ra2 * ((alpha - 1.0) * s * A + c * Ap);
    out.fyy = ra2 * ((alpha - 1.0) * s * B + c * Bp);
    return out;
}

} // namespace

BranchEval eval_branches(const TipFrame& frame, const Eigen::Vector2d& x) {
    const auto [r, theta] = frame.polar(x);
    if (!(r > 0.0))
        throw std::domain_error("branch functions evaluated at the crack tip");
    const double h = 0.5 * theta;
    const double sh = std::sin(h), ch = std::cos(h);
    const double s3 = std::sin(3.0 * h), c3 = std::cos(3.0 * h);
    const double st = std::sin(theta), ct = std::cos(theta);

    // theta-profiles of the two branch sets with their derivatives
    const ThetaFun trans[4] = {
        {sh, 0.5 * ch, -0.25 * sh},
        {ch, -0.5 * sh, -0.25 * ch},
        {s3, 1.5 * c3, -2.25 * s3},
        {c3, -1.5 * s3, -2.25 * c3},
    };
    const ThetaFun shear[4] = {
        {sh, 0.5 * ch, -0.25 * sh},
        {ch, -0.5 * sh, -0.25 * ch},
        {sh * st, 0.5 * ch * st + sh * ct, -0.25 * sh * st + ch * ct - sh * st},
        {ch * st, -0.5 * sh * st + ch * ct, -0.25 * ch * st - sh * ct - ch * st},
    };

    const Eigen::Matrix2d Q =
        (Eigen::Matrix2d() << frame.tangent, frame.normal).finished();

    BranchEval out;
    for (int k = 0; k < 4; ++k) {
        const PolarDeriv d = polar_derivs(r, theta, 1.5, trans[k]);
        out.t[k] = d.f;
        const Eigen::Vector2d g = Q * Eigen::Vector2d(d.fx, d.fy);
        out.t_x[k] = g.x();
        out.t_y[k] = g.y();
        Eigen::Matrix2d H;
        H << d.fxx, d.fxy, d.fxy, d.fyy;
        const Eigen::Matrix2d Hg = Q * H * Q.transpose();
        out.t_xx[k] = Hg(0, 0);
        out.t_yy[k] = Hg(1, 1);
        out.t_xy[k] = Hg(0, 1);

        const PolarDeriv e = polar_derivs(r, theta, 0.5, shear[k]);
        out.s[k] = e.f;
        const Eigen::Vector2d gs = Q * Eigen::Vector2d(e.fx, e.fy);
        out.s_x[k] = gs.x();
        out.s_y[k] = gs.y();
    }
    return out;
}

int anchor_heaviside(const CrackModel& crack, const Eigen::Vector2d& x) {
    try {
        return crack.heaviside(x);
    } catch (const std::domain_error&) {
        return crack.heaviside(x + 1e-8 * crack.scale() * crack.normal());
    }
}

BranchEval anchor_branches(const TipFrame& frame, double scale,
                           const Eigen::Vector2d& x) {
    Eigen::Vector2d xj = x;
    if ((xj - frame.tip).norm() < 1e-12 * scale)
        xj += 1e-8 * scale * frame.tangent;
    return eval_branches(frame, xj);
}

CrackModel CrackModel::on_patch(const Patch& patch, const Eigen::Vector2d& a,
                                const Eigen::Vector2d& b) {
    CrackModel m;
    m.a_ = a;
    m.b_ = b;
    m.scale_ = patch.scale();
    const double len = (b - a).norm();
    if (!(len > 1e-12 * m.scale_))
        throw std::invalid_argument("crack: endpoints coincide");
    m.tangent_ = (b - a) / len;
    m.normal_ = Eigen::Vector2d(-m.tangent_.y(), m.tangent_.x());

    // The segment must follow a parametric coordinate line. Candidates
    // are the domain edges that touch the crack line plus an interior
    // root found by bisection; each is verified to be straight, to lie
    // on the crack line throughout, and to actually pass through both
    // endpoints (several parametric lines can share one infinite line,
    // e.g. the two straight edges of the half annulus).
    auto signed_dist = [&](const Eigen::Vector2d& x) {
        return (x - a).dot(m.normal_);
    };
    auto trace_point = [&](bool along_u, double cross, double s) {
        return along_u ? patch.map_point(s, cross) : patch.map_point(cross, s);
    };
    auto locate_interior = [&](bool along_u) -> std::optional<double> {
        auto at = [&](double cross) {
            return along_u ? patch.map_point(0.5, cross)
                           : patch.map_point(cross, 0.5);
        };
        double lo = 0.0, hi = 1.0;
        double flo = signed_dist(at(lo));
        const double fhi = signed_dist(at(hi));
        if (std::abs(flo) < 1e-12 * m.scale_ || std::abs(fhi) < 1e-12 * m.scale_)
            return std::nullopt; // edge case, handled by the edge candidates
        if (flo * fhi > 0.0) return std::nullopt;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = signed_dist(at(mid));
            if (fm == 0.0) return mid;
            if (flo * fm < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        return 0.5 * (lo + hi);
    };
    auto line_is_straight = [&](bool along_u, double cross) {
        for (int i = 0; i <= 32; ++i) {
            const double s = static_cast<double>(i) / 32.0;
            if (std::abs(signed_dist(trace_point(along_u, cross, s))) >
                1e-9 * m.scale_)
                return false;
        }
        return true;
    };

    struct Candidate {
        bool along_u;
        double cross;
    };
    std::vector<Candidate> candidates;
    for (bool along_u : {true, false}) {
        for (double edge : {0.0, 1.0})
            if (std::abs(signed_dist(trace_point(along_u, edge, 0.5))) <
                1e-12 * m.scale_)
                candidates.push_back({along_u, edge});
        if (const auto cross = locate_interior(along_u))
            candidates.push_back({along_u, *cross});
    }

    bool found = false;
    double pa = 0.0, pb = 0.0;
    for (const auto& cand : candidates) {
        if (!line_is_straight(cand.along_u, cand.cross)) continue;

        // Arc-length coordinate along the candidate line; monotone for
        // the supported geometries, so endpoints come from bisection.
        auto tangential = [&](double s) {
            return (trace_point(cand.along_u, cand.cross, s) - a).dot(m.tangent_);
        };
        double t0 = tangential(0.0), t1 = tangential(1.0);
        double sign = 1.0;
        if (t0 > t1) {
            sign = -1.0; // parameter runs against the crack tangent
            std::swap(t0, t1);
        }
        auto param_of = [&](double target) -> double {
            if (target <= t0) return sign > 0 ? 0.0 : 1.0;
            if (target >= t1) return sign > 0 ? 1.0 : 0.0;
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (sign * (tangential(mid) - target) < 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        };
        const double qa = param_of(0.0);
        const double qb = param_of(len);
        const double tol = 1e-6 * m.scale_;
        if ((trace_point(cand.along_u, cand.cross, qa) - a).norm() > tol) continue;
        if ((trace_point(cand.along_u, cand.cross, qb) - b).norm() > tol) continue;

        m.along_u_ = cand.along_u;
        m.cross_line_ = cand.cross;
        pa = qa;
        pb = qb;
        found = true;
        break;
    }
    if (!found)
        throw std::invalid_argument(
            "crack: segment does not lie on a parametric coordinate line of the patch");

    // Bisection roundoff can leave an endpoint a few ulps inside the domain even
    // when the crack reaches the patch boundary; snap so such ends carry no tip
    // and span the boundary elements completely.
    const double edge_tol = 1e-9;
    const auto snap = [edge_tol](double t) {
        if (t < edge_tol) return 0.0;
        if (t > 1.0 - edge_tol) return 1.0;
        return t;
    };
    pa = snap(pa);
    pb = snap(pb);
    m.along_lo_ = std::min(pa, pb);
    m.along_hi_ = std::max(pa, pb);
    auto add_tip = [&](const Eigen::Vector2d& tip_pt, const Eigen::Vector2d& ahead,
                       double param) -> int {
        if (param < edge_tol || param > 1.0 - edge_tol) return -1;
        TipFrame f;
        f.tip = tip_pt;
        f.tangent = ahead;
        f.normal = Eigen::Vector2d(-ahead.y(), ahead.x());
        m.tips_.push_back(f);
        return static_cast<int>(m.tips_.size()) - 1;
    };
    const int tip_a = add_tip(a, -m.tangent_, pa);
    const int tip_b = add_tip(b, m.tangent_, pb);
    m.tip_at_lo_ = (pa < pb) ? tip_a : tip_b;
    m.tip_at_hi_ = (pa < pb) ? tip_b : tip_a;
    if (m.along_hi_ - m.along_lo_ < edge_tol)
        throw std::invalid_argument("crack: trace collapses to a point in parameter space");
    return m;
}

int CrackModel::heaviside(const Eigen::Vector2d& x) const {
    const double d = (x - a_).dot(normal_);
    if (std::abs(d) < 1e-14 * scale_)
        throw std::domain_error(fmt::format(
            "heaviside: point ({}, {}) lies on the crack line, side undefined",
            x.x(), x.y()));
    return d > 0.0 ? 1 : -1;
}

std::vector<ElementRect> element_grid(const Patch& patch) {
    std::vector<ElementRect> out;
    const auto& su = patch.ku().element_spans();
    const auto& sv = patch.kv().element_spans();
    const auto& U = patch.ku().knots();
    const auto& V = patch.kv().knots();
    out.reserve(su.size() * sv.size());
    for (int jv : sv)
        for (int iu : su)
            out.push_back({iu, jv, U[iu], U[iu + 1], V[jv], V[jv + 1]});
    return out;
}

EnrichmentPlan no_enrichment(const Patch& patch) {
    EnrichmentPlan plan;
    const size_t ne = element_grid(patch).size();
    plan.element_class.assign(ne, ElementCut::Standard);
    plan.element_tip.assign(ne, -1);
    plan.heaviside_cp.assign(patch.num_control_points(), 0);
    plan.tip_cp.assign(patch.num_control_points(), -1);
    return plan;
}

EnrichmentPlan classify(const Patch& patch, const CrackModel& crack) {
    EnrichmentPlan plan = no_enrichment(patch);
    const auto grid = element_grid(patch);

    const auto& along_kv = crack.along_u() ? patch.ku() : patch.kv();
    const auto& cross_kv = crack.along_u() ? patch.kv() : patch.ku();

    // Keep tips and the crack line off knot lines: nudge by 1e-10 of
    // the domain so ownership of the degenerate configuration is
    // deterministic.
    auto nudged = [&](double value, const KnotVector& kv, const char* what,
                      double direction) {
        for (double t : kv.knots())
            if (std::abs(value - t) < 1e-9 * (kv.back() - kv.front())) {
                const double moved = value + direction * 1e-10 * (kv.back() - kv.front());
                spdlog::warn("crack {} at parameter {} sits on a knot line, shifted to {}",
                             what, value, moved);
                return moved;
            }
        return value;
    };
    double cross = nudged(crack.cross_line(), cross_kv, "line", 1.0);
    double lo = crack.along_lo(), hi = crack.along_hi();
    if (crack.tip_at_lo() >= 0) lo = nudged(lo, along_kv, "tip", 1.0);
    if (crack.tip_at_hi() >= 0) hi = nudged(hi, along_kv, "tip", 1.0);

    for (size_t e = 0; e < grid.size(); ++e) {
        const auto& r = grid[e];
        const double a0 = crack.along_u() ? r.u0 : r.v0;
        const double a1 = crack.along_u() ? r.u1 : r.v1;
        const double c0 = crack.along_u() ? r.v0 : r.u0;
        const double c1 = crack.along_u() ? r.v1 : r.u1;
        if (!(cross > c0 && cross < c1)) continue;

        const bool lo_inside = crack.tip_at_lo() >= 0 && lo > a0 && lo < a1;
        const bool hi_inside = crack.tip_at_hi() >= 0 && hi > a0 && hi < a1;
        if (lo_inside && hi_inside)
            spdlog::warn("both crack tips fall in one element; refine the mesh");
        if (lo_inside || hi_inside) {
            plan.element_class[e] = ElementCut::Tip;
            plan.element_tip[e] =
                lo_inside ? crack.tip_at_lo() : crack.tip_at_hi();
        } else if (lo <= a0 && hi >= a1) {
            plan.element_class[e] = ElementCut::Cut;
        }
    }

    // Control point sets from the element supports: branch enrichment
    // wins over the step enrichment where supports overlap.
    const int p = patch.ku().degree(), q = patch.kv().degree();
    for (size_t e = 0; e < grid.size(); ++e) {
        if (plan.element_class[e] == ElementCut::Standard) continue;
        const auto& r = grid[e];
        for (int jv = 0; jv <= q; ++jv)
            for (int iu = 0; iu <= p; ++iu) {
                const int cp =
                    patch.cp_index(r.span_u - p + iu, r.span_v - q + jv);
                if (plan.element_class[e] == ElementCut::Tip)
                    plan.tip_cp[cp] = plan.element_tip[e];
                else if (plan.tip_cp[cp] < 0)
                    plan.heaviside_cp[cp] = 1;
            }
    }
    for (int cp = 0; cp < patch.num_control_points(); ++cp) {
        if (plan.tip_cp[cp] >= 0) {
            plan.heaviside_cp[cp] = 0;
            ++plan.n_tip_cp;
        } else if (plan.heaviside_cp[cp]) {
            ++plan.n_heaviside_cp;
        }
    }
    return plan;
}

std::vector<QuadPoint2D> element_quadrature(const Patch& patch,
                                            const EnrichmentPlan& plan,
                                            const CrackModel* crack,
                                            int element_id,
                                            CutQuadrature mode) {
    const auto grid = element_grid(patch);
    const auto& r = grid.at(element_id);
    const int p = patch.ku().degree(), q = patch.kv().degree();
    const ElementCut cls = plan.element_class.at(element_id);

    if (cls == ElementCut::Standard || mode == CutQuadrature::FullGauss)
        return tensor_rule(p + 1, q + 1, r.u0, r.u1, r.v0, r.v1);

    if (crack == nullptr)
        throw std::invalid_argument("element_quadrature: enriched element without a crack");

    const double cross = crack->cross_line();
    auto uv = [&](double along, double c) {
        return crack->along_u() ? Eigen::Vector2d(along, c)
                                : Eigen::Vector2d(c, along);
    };
    const double a0 = crack->along_u() ? r.u0 : r.v0;
    const double a1 = crack->along_u() ? r.u1 : r.v1;
    const double c0 = crack->along_u() ? r.v0 : r.u0;
    const double c1 = crack->along_u() ? r.v1 : r.u1;

    std::vector<QuadPoint2D> pts;
    const int n1 = std::max(p, q) + 1;

    auto add_triangles_of_rect = [&](double alo, double ahi, double clo,
                                     double chi, int n) {
        if (ahi - alo < 1e-14 || chi - clo < 1e-14) return;
        // Two triangles, collapse vertex on the crack-facing corner so
        // the points cluster toward the discontinuity line.
        const Eigen::Vector2d v00 = uv(alo, clo), v10 = uv(ahi, clo),
                              v01 = uv(alo, chi), v11 = uv(ahi, chi);
        for (const auto& tri :
             {std::array<Eigen::Vector2d, 3>{v00, v10, v11},
              std::array<Eigen::Vector2d, 3>{v00, v11, v01}}) {
            auto t = duffy_triangle_rule(n, tri[0], tri[1], tri[2]);
            pts.insert(pts.end(), t.begin(), t.end());
        }
    };

    if (cls == ElementCut::Cut) {
        add_triangles_of_rect(a0, a1, c0, cross, n1);
        add_triangles_of_rect(a0, a1, cross, c1, n1);
        return pts;
    }

    // Tip element: four sub-cells meeting at the tip, each with a
    // dense tensor rule to resolve the r^{1/2} gradients.
    const int tip = plan.element_tip.at(element_id);
    double tip_along = 0.5 * (a0 + a1);
    if (tip == crack->tip_at_lo())
        tip_along = crack->along_lo();
    else if (tip == crack->tip_at_hi())
        tip_along = crack->along_hi();
    tip_along = std::clamp(tip_along, a0 + 1e-12, a1 - 1e-12);
    const double tcross = std::clamp(cross, c0 + 1e-12, c1 - 1e-12);

    constexpr int kTipOrder = 13;
    for (const auto& [alo, ahi] : {std::pair{a0, tip_along}, {tip_along, a1}})
        for (const auto& [clo, chi] : {std::pair{c0, tcross}, {tcross, c1}}) {
            const Eigen::Vector2d lo_uv = uv(alo, clo), hi_uv = uv(ahi, chi);
            auto t = tensor_rule(kTipOrder, kTipOrder,
                                 std::min(lo_uv.x(), hi_uv.x()),
                                 std::max(lo_uv.x(), hi_uv.x()),
                                 std::min(lo_uv.y(), hi_uv.y()),
                                 std::max(lo_uv.y(), hi_uv.y()));
            pts.insert(pts.end(), t.begin(), t.end());
        }
    return pts;
}

} // namespace xiga
