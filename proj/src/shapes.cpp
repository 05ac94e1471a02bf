#include "xiga/shapes.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "xiga/refine.hpp"

namespace xiga {

namespace {

void require_plate_degree(int degree) {
    if (degree < 2)
        throw std::invalid_argument(
            "patch factory: plate kinematics need a C1 basis, use degree >= 2");
}

std::vector<double> uniform_breaks(int n_el) {
    std::vector<double> b;
    for (int i = 1; i < n_el; ++i) b.push_back(static_cast<double>(i) / n_el);
    return b;
}

// Break points giving n_el elements on [0,1] while keeping 0.5 (an
// existing C0 line of the half-circle arcs) an element boundary.
std::vector<double> half_aware_breaks(int n_el) {
    const int n1 = n_el / 2, n2 = n_el - n1;
    std::vector<double> b;
    for (int i = 1; i < n1; ++i) b.push_back(0.5 * i / n1);
    for (int i = 1; i < n2; ++i) b.push_back(0.5 + 0.5 * i / n2);
    return b;
}

} // namespace

Patch square_patch(double length, double width, int degree, int n_el) {
    require_plate_degree(degree);
    if (!(length > 0.0) || !(width > 0.0) || n_el < 1)
        throw std::invalid_argument("square_patch: invalid dimensions");
    KnotVector lin({0, 0, 1, 1}, 1);
    Patch base(lin, lin, {0.0, length, 0.0, length}, {0.0, 0.0, width, width},
               {1, 1, 1, 1});
    Patch elevated = elevate_degree(base, degree, degree);
    return h_refine(elevated, uniform_breaks(n_el), uniform_breaks(n_el));
}

Patch circular_patch(double radius, int degree, int n_el) {
    require_plate_degree(degree);
    if (!(radius > 0.0) || n_el < 1)
        throw std::invalid_argument("circular_patch: invalid dimensions");
    const double s = radius / std::sqrt(2.0);
    const double d = radius * std::sqrt(2.0);
    const double k = std::sqrt(2.0) / 2.0;
    KnotVector quad({0, 0, 0, 1, 1, 1}, 2);
    // 3x3 net: corner points on the circle, edge midpoints at the
    // tangent intersections, center collapsed to the origin.
    std::vector<double> x = {-s, 0, s, -d, 0, d, -s, 0, s};
    std::vector<double> y = {-s, -d, -s, 0, 0, 0, s, d, s};
    std::vector<double> w = {1, k, 1, k, k * k, k, 1, k, 1};
    Patch base(quad, quad, std::move(x), std::move(y), std::move(w));
    Patch elevated = elevate_degree(base, degree, degree);
    return h_refine(elevated, uniform_breaks(n_el), uniform_breaks(n_el));
}

Patch half_annulus_patch(double r_inner, double r_outer, int degree, int n_el) {
    require_plate_degree(degree);
    if (!(r_inner > 0.0) || !(r_outer > r_inner) || n_el < 1)
        throw std::invalid_argument(
            "half_annulus_patch: need 0 < r_inner < r_outer");
    const double k = std::sqrt(2.0) / 2.0;
    KnotVector arc({0, 0, 0, 0.5, 0.5, 1, 1, 1}, 2);
    KnotVector lin({0, 0, 1, 1}, 1);
    // u traces theta from pi to 0 through two exact quarter arcs.
    const double ax[5] = {-1, -1, 0, 1, 1};
    const double ay[5] = {0, 1, 1, 1, 0};
    const double aw[5] = {1, k, 1, k, 1};
    std::vector<double> x, y, w;
    for (double rad : {r_inner, r_outer})
        for (int i = 0; i < 5; ++i) {
            x.push_back(rad * ax[i]);
            y.push_back(rad * ay[i]);
            w.push_back(aw[i]);
        }
    Patch base(arc, lin, std::move(x), std::move(y), std::move(w));
    Patch elevated = elevate_degree(base, degree, degree);
    return h_refine(elevated, half_aware_breaks(n_el), uniform_breaks(n_el));
}

} // namespace xiga
