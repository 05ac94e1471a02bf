#include "xiga/patch.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace xiga {

Patch::Patch(KnotVector ku, KnotVector kv, std::vector<double> x,
             std::vector<double> y, std::vector<double> w)
    : ku_(std::move(ku)), kv_(std::move(kv)), x_(std::move(x)), y_(std::move(y)),
      w_(std::move(w)) {
    const auto n = static_cast<size_t>(nu()) * nv();
    if (x_.size() != n || y_.size() != n || w_.size() != n)
        throw std::invalid_argument(fmt::format(
            "patch: control net size mismatch, expected {} points", n));
    double lo_x = x_[0], hi_x = x_[0], lo_y = y_[0], hi_y = y_[0];
    for (size_t a = 0; a < n; ++a) {
        if (!(w_[a] > 0.0))
            throw std::invalid_argument("patch: weights must be positive");
        lo_x = std::min(lo_x, x_[a]);
        hi_x = std::max(hi_x, x_[a]);
        lo_y = std::min(lo_y, y_[a]);
        hi_y = std::max(hi_y, y_[a]);
    }
    scale_ = std::hypot(hi_x - lo_x, hi_y - lo_y);
    if (!(scale_ > 0.0))
        throw std::invalid_argument("patch: degenerate control net");
}

SurfaceBasis Patch::eval(double u, double v) const {
    const BasisEval bu = eval_basis(ku_, u);
    const BasisEval bv = eval_basis(kv_, v);

    SurfaceBasis out;
    out.span_u = bu.span;
    out.span_v = bv.span;
    out.nu_fun = bu.count();
    out.nv_fun = bv.count();
    const int n = out.count();
    out.index.resize(n);
    out.r.resize(n);
    out.r_u.resize(n);
    out.r_v.resize(n);
    out.r_uu.resize(n);
    out.r_vv.resize(n);
    out.r_uv.resize(n);

    // Weighted homogeneous sums A and their parametric derivatives.
    double W = 0, W_u = 0, W_v = 0, W_uu = 0, W_vv = 0, W_uv = 0;
    std::vector<double> bw(n), bw_u(n), bw_v(n), bw_uu(n), bw_vv(n), bw_uv(n);
    int k = 0;
    for (int jv = 0; jv < out.nv_fun; ++jv) {
        const int j = bv.first_index() + jv;
        for (int iu = 0; iu < out.nu_fun; ++iu, ++k) {
            const int i = bu.first_index() + iu;
            const int a = cp_index(i, j);
            out.index[k] = a;
            const double w = w_[a];
            bw[k] = bu.value[iu] * bv.value[jv] * w;
            bw_u[k] = bu.d1[iu] * bv.value[jv] * w;
            bw_v[k] = bu.value[iu] * bv.d1[jv] * w;
            bw_uu[k] = bu.d2[iu] * bv.value[jv] * w;
            bw_vv[k] = bu.value[iu] * bv.d2[jv] * w;
            bw_uv[k] = bu.d1[iu] * bv.d1[jv] * w;
            W += bw[k];
            W_u += bw_u[k];
            W_v += bw_v[k];
            W_uu += bw_uu[k];
            W_vv += bw_vv[k];
            W_uv += bw_uv[k];
        }
    }
    if (!(W > 0.0)) throw std::runtime_error("patch eval: weight function not positive");

    // Quotient rule for R = A/W, applied per basis function.
    for (int q = 0; q < n; ++q) {
        const double R = bw[q] / W;
        const double Ru = (bw_u[q] - R * W_u) / W;
        const double Rv = (bw_v[q] - R * W_v) / W;
        out.r[q] = R;
        out.r_u[q] = Ru;
        out.r_v[q] = Rv;
        out.r_uu[q] = (bw_uu[q] - 2.0 * Ru * W_u - R * W_uu) / W;
        out.r_vv[q] = (bw_vv[q] - 2.0 * Rv * W_v - R * W_vv) / W;
        out.r_uv[q] = (bw_uv[q] - Ru * W_v - Rv * W_u - R * W_uv) / W;
    }

    out.x.setZero();
    out.x_u.setZero();
    out.x_v.setZero();
    out.x_uu.setZero();
    out.x_vv.setZero();
    out.x_uv.setZero();
    for (int q = 0; q < n; ++q) {
        const Eigen::Vector2d p = control_point(out.index[q]);
        out.x += out.r[q] * p;
        out.x_u += out.r_u[q] * p;
        out.x_v += out.r_v[q] * p;
        out.x_uu += out.r_uu[q] * p;
        out.x_vv += out.r_vv[q] * p;
        out.x_uv += out.r_uv[q] * p;
    }
    return out;
}

Eigen::Vector2d Patch::map_point(double u, double v) const {
    const BasisEval bu = eval_basis(ku_, u);
    const BasisEval bv = eval_basis(kv_, v);
    double W = 0;
    Eigen::Vector2d A = Eigen::Vector2d::Zero();
    for (int jv = 0; jv < bv.count(); ++jv) {
        const int j = bv.first_index() + jv;
        for (int iu = 0; iu < bu.count(); ++iu) {
            const int a = cp_index(bu.first_index() + iu, j);
            const double bw = bu.value[iu] * bv.value[jv] * w_[a];
            W += bw;
            A += bw * control_point(a);
        }
    }
    return A / W;
}

PhysicalBasis Patch::physical(double u, double v) const {
    const SurfaceBasis s = eval(u, v);
    Eigen::Matrix2d J;
    J << s.x_u.x(), s.x_v.x(), s.x_u.y(), s.x_v.y();
    const double det = J.determinant();
    if (std::abs(det) < 1e-12 * scale_ * scale_)
        throw std::runtime_error(fmt::format(
            "singular geometry map at (u,v)=({}, {}), |J|={}", u, v, det));

    PhysicalBasis out;
    out.index = s.index;
    out.r = s.r;
    out.x = s.x;
    out.det_j = det;
    const int n = s.count();
    out.r_x.resize(n);
    out.r_y.resize(n);
    out.r_xx.resize(n);
    out.r_yy.resize(n);
    out.r_xy.resize(n);

    const Eigen::Matrix2d Jinv = J.inverse();

    // Second-derivative transform: solve the 3x3 system relating
    // parametric second derivatives to physical ones, with the
    // first-derivative geometry curvature terms moved to the right side.
    Eigen::Matrix3d T;
    const double xu = s.x_u.x(), yu = s.x_u.y(), xv = s.x_v.x(), yv = s.x_v.y();
    T << xu * xu, 2.0 * xu * yu, yu * yu,
         xu * xv, xu * yv + xv * yu, yu * yv,
         xv * xv, 2.0 * xv * yv, yv * yv;
    const Eigen::PartialPivLU<Eigen::Matrix3d> lu(T);

    for (int q = 0; q < n; ++q) {
        const Eigen::Vector2d g =
            Jinv.transpose() * Eigen::Vector2d(s.r_u[q], s.r_v[q]);
        out.r_x[q] = g.x();
        out.r_y[q] = g.y();
        Eigen::Vector3d rhs;
        rhs << s.r_uu[q] - (g.x() * s.x_uu.x() + g.y() * s.x_uu.y()),
               s.r_uv[q] - (g.x() * s.x_uv.x() + g.y() * s.x_uv.y()),
               s.r_vv[q] - (g.x() * s.x_vv.x() + g.y() * s.x_vv.y());
        const Eigen::Vector3d h = lu.solve(rhs);
        out.r_xx[q] = h(0);
        out.r_xy[q] = h(1);
        out.r_yy[q] = h(2);
    }
    return out;
}

void Patch::write(std::ostream& os) const {
    os.precision(17);
    auto dump_kv = [&os](const KnotVector& kv) {
        os << kv.degree() << ' ' << kv.knots().size();
        for (double t : kv.knots()) os << ' ' << t;
        os << '\n';
    };
    os << "nurbs-patch 1\n";
    dump_kv(ku_);
    dump_kv(kv_);
    os << nu() << ' ' << nv() << '\n';
    for (int a = 0; a < num_control_points(); ++a)
        os << x_[a] << ' ' << y_[a] << ' ' << w_[a] << '\n';
}

Patch Patch::read(std::istream& is) {
    std::string tag;
    int version = 0;
    is >> tag >> version;
    if (tag != "nurbs-patch" || version != 1)
        throw std::runtime_error("patch read: unrecognized header");
    auto read_kv = [&is]() {
        int p = 0;
        size_t n = 0;
        is >> p >> n;
        std::vector<double> k(n);
        for (auto& t : k) is >> t;
        return KnotVector(std::move(k), p);
    };
    KnotVector ku = read_kv();
    KnotVector kv = read_kv();
    int nu = 0, nv = 0;
    is >> nu >> nv;
    std::vector<double> x(static_cast<size_t>(nu) * nv), y(x.size()), w(x.size());
    for (size_t a = 0; a < x.size(); ++a) is >> x[a] >> y[a] >> w[a];
    if (!is) throw std::runtime_error("patch read: truncated stream");
    Patch p(std::move(ku), std::move(kv), std::move(x), std::move(y), std::move(w));
    if (p.nu() != nu || p.nv() != nv)
        throw std::runtime_error("patch read: control net size disagrees with knots");
    return p;
}

} // namespace xiga
