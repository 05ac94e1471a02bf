#pragma once

#include <vector>

#include <Eigen/Dense>

namespace xiga {

struct QuadPoint1D {
    double x;
    double w;
};

// Gauss-Legendre nodes/weights on [-1, 1]. Exact for polynomials of
// degree 2n-1. Computed by Newton iteration on the Legendre polynomial,
// accurate to machine precision for the sizes used here.
const std::vector<QuadPoint1D>& gauss_legendre(int n);

struct QuadPoint2D {
    double u;
    double v;
    double w;
};

// Tensor rule on the rectangle [u0,u1] x [v0,v1].
std::vector<QuadPoint2D> tensor_rule(int nu, int nv, double u0, double u1,
                                     double v0, double v1);

// Rule on the triangle (a, b, c) built by collapsing a tensor rule onto
// the Duffy map anchored at vertex a; weights sum to the triangle area.
// The clustering toward vertex a suits integrands with a vertex
// singularity there.
std::vector<QuadPoint2D> duffy_triangle_rule(int n, const Eigen::Vector2d& a,
                                             const Eigen::Vector2d& b,
                                             const Eigen::Vector2d& c);

} // namespace xiga
