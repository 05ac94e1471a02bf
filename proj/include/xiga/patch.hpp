#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "xiga/knot_vector.hpp"

namespace xiga {

// Rational basis values and derivatives (parametric) for the functions
// supported on one surface span pair, plus the mapped point and the
// geometry derivatives needed to push them to physical space.
struct SurfaceBasis {
    int span_u = 0, span_v = 0;
    int nu_fun = 0, nv_fun = 0; // degree+1 each

    std::vector<int> index;       // global control point indices, u fastest
    std::vector<double> r;        // rational basis values
    std::vector<double> r_u, r_v; // first parametric derivatives
    std::vector<double> r_uu, r_vv, r_uv;

    Eigen::Vector2d x{};                   // mapped physical point
    Eigen::Vector2d x_u{}, x_v{};          // geometry tangents
    Eigen::Vector2d x_uu{}, x_vv{}, x_uv{};

    int count() const { return nu_fun * nv_fun; }
};

// Basis quantities expressed in physical coordinates.
struct PhysicalBasis {
    std::vector<int> index;
    std::vector<double> r;
    std::vector<double> r_x, r_y;
    std::vector<double> r_xx, r_yy, r_xy;
    Eigen::Vector2d x{};
    double det_j = 0.0; // of the parametric-to-physical map

    int count() const { return static_cast<int>(index.size()); }
};

// Tensor-product NURBS patch over a 2-D domain. Control points are
// stored in a u-fastest grid: global index = j*nu + i.
class Patch {
public:
    Patch(KnotVector ku, KnotVector kv, std::vector<double> x,
          std::vector<double> y, std::vector<double> w);

    const KnotVector& ku() const { return ku_; }
    const KnotVector& kv() const { return kv_; }
    int nu() const { return ku_.num_basis(); }
    int nv() const { return kv_.num_basis(); }
    int num_control_points() const { return nu() * nv(); }
    int cp_index(int i, int j) const { return j * nu() + i; }

    const std::vector<double>& cx() const { return x_; }
    const std::vector<double>& cy() const { return y_; }
    const std::vector<double>& weights() const { return w_; }
    Eigen::Vector2d control_point(int a) const { return {x_[a], y_[a]}; }

    // Characteristic physical length (control net bounding box diagonal).
    double scale() const { return scale_; }

    // Rational basis with parametric derivatives at (u, v).
    SurfaceBasis eval(double u, double v) const;

    // Basis with physical derivatives at (u, v). Throws
    // std::runtime_error when the map is singular there.
    PhysicalBasis physical(double u, double v) const;

    Eigen::Vector2d map_point(double u, double v) const;

    void write(std::ostream& os) const;
    static Patch read(std::istream& is);

private:
    KnotVector ku_, kv_;
    std::vector<double> x_, y_, w_;
    double scale_;
};

} // namespace xiga
