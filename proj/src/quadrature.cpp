#include "xiga/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace xiga {

namespace {

std::vector<QuadPoint1D> compute_gauss(int n) {
    std::vector<QuadPoint1D> pts(n);
    const double eps = 1e-15;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < eps) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        pts[i] = {-x, w};
        pts[n - 1 - i] = {x, w};
    }
    if (n % 2 == 1) pts[n / 2].x = 0.0;
    return pts;
}

} // namespace

const std::vector<QuadPoint1D>& gauss_legendre(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("gauss_legendre: order out of range");
    static std::map<int, std::vector<QuadPoint1D>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
    return it->second;
}

std::vector<QuadPoint2D> tensor_rule(int nu, int nv, double u0, double u1,
                                     double v0, double v1) {
    const auto& gu = gauss_legendre(nu);
    const auto& gv = gauss_legendre(nv);
    const double ju = 0.5 * (u1 - u0), jv = 0.5 * (v1 - v0);
    std::vector<QuadPoint2D> out;
    out.reserve(static_cast<size_t>(nu) * nv);
    for (const auto& b : gv)
        for (const auto& a : gu)
            out.push_back({u0 + ju * (a.x + 1.0), v0 + jv * (b.x + 1.0),
                           a.w * b.w * ju * jv});
    return out;
}

std::vector<QuadPoint2D> duffy_triangle_rule(int n, const Eigen::Vector2d& a,
                                             const Eigen::Vector2d& b,
                                             const Eigen::Vector2d& c) {
    const auto& g = gauss_legendre(n);
    const double area2 = (b.x() - a.x()) * (c.y() - a.y()) -
                         (c.x() - a.x()) * (b.y() - a.y());
    std::vector<QuadPoint2D> out;
    out.reserve(static_cast<size_t>(n) * n);
    // Map the unit square (s,t) through p = a + s[(1-t)(b-a) + t(c-a)];
    // the Jacobian s*|area2| vanishes at the collapsed vertex a.
    for (const auto& qs : g) {
        const double s = 0.5 * (qs.x + 1.0);
        for (const auto& qt : g) {
            const double t = 0.5 * (qt.x + 1.0);
            const Eigen::Vector2d p =
                a + s * ((1.0 - t) * (b - a) + t * (c - a));
            const double w = 0.25 * qs.w * qt.w * s * std::abs(area2);
            out.push_back({p.x(), p.y(), w});
        }
    }
    return out;
}

} // namespace xiga
