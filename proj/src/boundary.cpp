#include "xiga/boundary.hpp"

#include <cmath>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace xiga {

BoundarySpec BoundarySpec::all(EdgeCondition c) {
    BoundarySpec bc;
    bc.edge = {c, c, c, c};
    return bc;
}

namespace {

// Control point indices of one parametric edge row and the row next to
// it, ordered along the edge.
struct EdgeRows {
    std::vector<int> edge, adjacent;
};

EdgeRows edge_rows(const Patch& p, int which) {
    EdgeRows out;
    const int nu = p.nu(), nv = p.nv();
    auto push = [&](int i, int j, int ia, int ja) {
        out.edge.push_back(p.cp_index(i, j));
        out.adjacent.push_back(p.cp_index(ia, ja));
    };
    switch (which) {
    case 0:
        for (int j = 0; j < nv; ++j) push(0, j, 1, j);
        break;
    case 1:
        for (int j = 0; j < nv; ++j) push(nu - 1, j, nu - 2, j);
        break;
    case 2:
        for (int i = 0; i < nu; ++i) push(i, 0, i, 1);
        break;
    case 3:
        for (int i = 0; i < nu; ++i) push(i, nv - 1, i, nv - 2);
        break;
    default:
        throw std::logic_error("edge_rows: bad edge index");
    }
    return out;
}

// Dominant axis of a straight edge: 0 for x, 1 for y. Throws when the
// control points are not collinear along an axis.
int edge_axis(const Patch& p, const std::vector<int>& cps) {
    double dx = 0, dy = 0;
    const Eigen::Vector2d first = p.control_point(cps.front());
    for (int a : cps) {
        const Eigen::Vector2d d = p.control_point(a) - first;
        dx = std::max(dx, std::abs(d.x()));
        dy = std::max(dy, std::abs(d.y()));
    }
    const double tol = 1e-9 * p.scale();
    if (dy < tol && dx > tol) return 0;
    if (dx < tol && dy > tol) return 1;
    throw std::invalid_argument(
        "simply supported conditions need an axis-aligned straight edge");
}

} // namespace

ConstraintSet build_constraints(const Patch& patch, const DofMap& dofs,
                                const BoundarySpec& bc,
                                const AssembledSystem& sys,
                                double prune_ratio) {
    const int n = dofs.n_total();
    std::vector<char> eliminated(n, 0);
    std::vector<int> master(n, -1);

    // Enriched dofs that received no meaningful stiffness: their basis
    // function is numerically zero wherever it was integrated.
    double mean_std_diag = 0.0;
    for (int d = 0; d < dofs.n_standard(); ++d) mean_std_diag += sys.K(d, d);
    mean_std_diag /= std::max(1, dofs.n_standard());
    ConstraintSet out;
    for (int d = dofs.n_standard(); d < n; ++d)
        if (sys.K(d, d) < prune_ratio * mean_std_diag) {
            eliminated[d] = 1;
            ++out.n_pruned;
        }
    if (out.n_pruned > 0)
        spdlog::info("pruned {} near-null enriched dofs", out.n_pruned);

    // Component ids: 0 u0, 1 v0, 2 w, 3 bx, 4 by.
    auto fix = [&](int cp, int comp) { eliminated[dofs.standard(cp, comp)] = 1; };

    for (int e = 0; e < 4; ++e) {
        const EdgeCondition cond = bc.edge[e];
        if (cond == EdgeCondition::Free) continue;
        const EdgeRows rows = edge_rows(patch, e);
        switch (cond) {
        case EdgeCondition::SoftSimplySupported:
            for (int cp : rows.edge) fix(cp, 2);
            break;
        case EdgeCondition::SimplySupported: {
            const int axis = edge_axis(patch, rows.edge);
            for (int cp : rows.edge) {
                fix(cp, 2);
                fix(cp, axis == 0 ? 0 : 1); // tangential displacement
                fix(cp, axis == 0 ? 3 : 4); // tangential rotation
            }
            break;
        }
        case EdgeCondition::Clamped:
            for (int cp : rows.edge)
                for (int c = 0; c < 5; ++c) fix(cp, c);
            for (int cp : rows.adjacent) fix(cp, 2);
            break;
        case EdgeCondition::Symmetry: {
            for (size_t k = 0; k < rows.edge.size(); ++k) {
                const int cp = rows.edge[k];
                if (patch.control_point(cp).norm() < bc.release_radius)
                    continue; // crack face: unconstrained
                fix(cp, 1); // in-plane displacement across the plane
                fix(cp, 4); // rotation across the plane
                const int w_edge = dofs.standard(cp, 2);
                const int w_adj = dofs.standard(rows.adjacent[k], 2);
                master[w_edge] = w_adj;
            }
            break;
        }
        case EdgeCondition::AntiSymmetry:
            for (int cp : rows.edge) {
                if (patch.control_point(cp).norm() < bc.release_radius)
                    continue; // crack face: unconstrained
                fix(cp, 0); // in-plane displacement along the plane
                fix(cp, 2); // deflection changes sign across the plane
                fix(cp, 3); // rotation along the plane
            }
            break;
        default:
            break;
        }
    }

    // Resolve ties: follow master chains, drop ties whose master is
    // eliminated, reject cycles.
    for (int d = 0; d < n; ++d) {
        if (master[d] < 0) continue;
        if (eliminated[d]) {
            master[d] = -1;
            continue;
        }
        int m = master[d];
        int hops = 0;
        while (master[m] >= 0 && !eliminated[m]) {
            m = master[m];
            if (++hops > n) throw std::runtime_error("constraints: tie cycle");
        }
        if (eliminated[m]) {
            eliminated[d] = 1;
            master[d] = -1;
        } else {
            master[d] = m;
        }
    }

    out.map.assign(n, -1);
    for (int d = 0; d < n; ++d) {
        if (eliminated[d]) {
            ++out.n_eliminated;
            continue;
        }
        if (master[d] >= 0) continue;
        out.map[d] = out.n_reduced++;
    }
    for (int d = 0; d < n; ++d)
        if (!eliminated[d] && master[d] >= 0) {
            out.map[d] = out.map[master[d]];
            if (out.map[d] < 0)
                throw std::runtime_error("constraints: tie to eliminated master survived");
            ++out.n_tied;
        }
    if (out.n_reduced == 0)
        throw std::runtime_error("constraints eliminated every unknown");
    return out;
}

ReducedSystem reduce(const AssembledSystem& sys, const ConstraintSet& cons) {
    const int n = static_cast<int>(cons.map.size());
    ReducedSystem red;
    red.K = Eigen::MatrixXd::Zero(cons.n_reduced, cons.n_reduced);
    red.M = Eigen::MatrixXd::Zero(cons.n_reduced, cons.n_reduced);
    for (int i = 0; i < n; ++i) {
        const int ri = cons.map[i];
        if (ri < 0) continue;
        for (int j = 0; j < n; ++j) {
            const int rj = cons.map[j];
            if (rj < 0) continue;
            red.K(ri, rj) += sys.K(i, j);
            red.M(ri, rj) += sys.M(i, j);
        }
    }
    return red;
}

Eigen::VectorXd expand(const ConstraintSet& cons, const Eigen::VectorXd& v) {
    if (v.size() != cons.n_reduced)
        throw std::invalid_argument("expand: reduced vector size mismatch");
    Eigen::VectorXd full = Eigen::VectorXd::Zero(cons.map.size());
    for (size_t d = 0; d < cons.map.size(); ++d)
        if (cons.map[d] >= 0) full[d] = v[cons.map[d]];
    return full;
}

} // namespace xiga
