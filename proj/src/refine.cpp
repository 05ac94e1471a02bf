#include "xiga/refine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <Eigen/Dense>

namespace xiga {

namespace {

using HPoint = Eigen::Vector3d; // (w*x, w*y, w)

struct HCurveSet {
    KnotVector kv;
    // rows[r][i]: homogeneous control point i of row r
    std::vector<std::vector<HPoint>> rows;
};

// Boehm single-knot insertion applied to every row.
void insert_knot(HCurveSet& c, double u) {
    const int p = c.kv.degree();
    const auto& U = c.kv.knots();
    const int k = c.kv.find_span(u);

    for (auto& row : c.rows) {
        std::vector<HPoint> q(row.size() + 1);
        for (int i = 0; i <= k - p; ++i) q[i] = row[i];
        for (int i = k - p + 1; i <= k; ++i) {
            const double alpha = (u - U[i]) / (U[i + p] - U[i]);
            q[i] = alpha * row[i] + (1.0 - alpha) * row[i - 1];
        }
        for (size_t i = k + 1; i < q.size(); ++i) q[i] = row[i - 1];
        row = std::move(q);
    }
    std::vector<double> nk = U;
    nk.insert(nk.begin() + k + 1, u);
    c.kv = KnotVector(std::move(nk), p);
}

// Exact degree elevation by collocation: the original homogeneous
// coordinates are splines contained in the elevated space, so solving
// the interpolation problem at the Greville points of the elevated
// basis recovers their unique control points there.
void elevate(HCurveSet& c, int target_degree) {
    const int p = c.kv.degree();
    if (target_degree == p) return;
    if (target_degree < p)
        throw std::invalid_argument("elevate_degree: target below current degree");

    const int t = target_degree - p;
    std::map<double, int> mult;
    for (double u : c.kv.knots()) ++mult[u];
    std::vector<double> nk;
    for (const auto& [u, m] : mult)
        nk.insert(nk.end(), m + t, u);
    KnotVector ekv(std::move(nk), target_degree);

    const int n_new = ekv.num_basis();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_new, n_new);
    std::vector<double> site(n_new);
    for (int i = 0; i < n_new; ++i) {
        site[i] = ekv.greville(i);
        const BasisEval b = eval_basis(ekv, site[i]);
        for (int k = 0; k < b.count(); ++k)
            A(i, b.first_index() + k) = b.value[k];
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);

    for (auto& row : c.rows) {
        Eigen::MatrixXd g(n_new, 3);
        for (int i = 0; i < n_new; ++i) {
            const BasisEval b = eval_basis(c.kv, site[i]);
            HPoint h = HPoint::Zero();
            for (int k = 0; k < b.count(); ++k)
                h += b.value[k] * row[b.first_index() + k];
            g.row(i) = h.transpose();
        }
        const Eigen::MatrixXd q = lu.solve(g);
        row.resize(n_new);
        for (int i = 0; i < n_new; ++i) row[i] = q.row(i).transpose();
    }
    c.kv = std::move(ekv);
}

HCurveSet rows_along_u(const Patch& p) {
    HCurveSet c{p.ku(), {}};
    c.rows.resize(p.nv());
    for (int j = 0; j < p.nv(); ++j) {
        c.rows[j].resize(p.nu());
        for (int i = 0; i < p.nu(); ++i) {
            const int a = p.cp_index(i, j);
            const double w = p.weights()[a];
            c.rows[j][i] = HPoint(w * p.cx()[a], w * p.cy()[a], w);
        }
    }
    return c;
}

Patch rebuild(const HCurveSet& u_rows, const KnotVector& kv_v) {
    const int nu = static_cast<int>(u_rows.rows[0].size());
    const int nv = static_cast<int>(u_rows.rows.size());
    std::vector<double> x(static_cast<size_t>(nu) * nv), y(x.size()), w(x.size());
    for (int j = 0; j < nv; ++j)
        for (int i = 0; i < nu; ++i) {
            const HPoint& h = u_rows.rows[j][i];
            const size_t a = static_cast<size_t>(j) * nu + i;
            if (!(h.z() > 0.0))
                throw std::runtime_error("refine: produced non-positive weight");
            x[a] = h.x() / h.z();
            y[a] = h.y() / h.z();
            w[a] = h.z();
        }
    return Patch(u_rows.kv, kv_v, std::move(x), std::move(y), std::move(w));
}

void transpose(HCurveSet& c, KnotVector& other) {
    std::vector<std::vector<HPoint>> t(c.rows[0].size(),
                                       std::vector<HPoint>(c.rows.size()));
    for (size_t j = 0; j < c.rows.size(); ++j)
        for (size_t i = 0; i < c.rows[j].size(); ++i) t[i][j] = c.rows[j][i];
    c.rows = std::move(t);
    std::swap(c.kv, other);
}

void check_insertable(const KnotVector& kv, std::vector<double>& knots) {
    std::sort(knots.begin(), knots.end());
    for (double u : knots) {
        if (!(u > kv.front() && u < kv.back()))
            throw std::invalid_argument("h_refine: new knot outside open domain");
        int mult = 0;
        for (double t : kv.knots())
            if (t == u) ++mult;
        mult += static_cast<int>(std::count(knots.begin(), knots.end(), u));
        if (mult > kv.degree())
            throw std::invalid_argument(
                "h_refine: insertion would exceed interior multiplicity budget");
    }
}

} // namespace

Patch h_refine(const Patch& patch, std::vector<double> new_knots_u,
               std::vector<double> new_knots_v) {
    check_insertable(patch.ku(), new_knots_u);
    check_insertable(patch.kv(), new_knots_v);

    HCurveSet c = rows_along_u(patch);
    for (double u : new_knots_u) insert_knot(c, u);
    KnotVector kvv = patch.kv();
    transpose(c, kvv);
    for (double v : new_knots_v) insert_knot(c, v);
    transpose(c, kvv);
    return rebuild(c, kvv);
}

Patch elevate_degree(const Patch& patch, int degree_u, int degree_v) {
    HCurveSet c = rows_along_u(patch);
    elevate(c, degree_u);
    KnotVector kvv = patch.kv();
    transpose(c, kvv);
    elevate(c, degree_v);
    transpose(c, kvv);
    return rebuild(c, kvv);
}

std::vector<double> missing_uniform_breaks(const KnotVector& kv, int n_elements) {
    std::vector<double> out;
    for (int i = 1; i < n_elements; ++i) {
        const double u = static_cast<double>(i) / n_elements;
        const double span = kv.back() - kv.front();
        const double target = kv.front() + u * span;
        bool present = false;
        for (double t : kv.knots())
            if (std::abs(t - target) < 1e-14 * std::max(1.0, span)) present = true;
        if (!present) out.push_back(target);
    }
    return out;
}

} // namespace xiga
