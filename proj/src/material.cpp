#include "xiga/material.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "xiga/quadrature.hpp"

namespace xiga {

Constituent material_preset(const std::string& name) {
    if (name == "aluminum" || name == "Al") return {70.0e9, 0.3, 2707.0};
    if (name == "zirconia" || name == "ZrO2") return {200.0e9, 0.3, 5700.0};
    if (name == "alumina" || name == "Al2O3") return {380.0e9, 0.3, 3800.0};
    throw std::invalid_argument(fmt::format("unknown material preset '{}'", name));
}

GradedMaterial::GradedMaterial(Constituent ceramic, Constituent metal,
                               double exponent, Homogenization scheme)
    : ceramic_(ceramic), metal_(metal), exponent_(exponent), scheme_(scheme) {
    if (!(exponent_ >= 0.0))
        throw std::invalid_argument("graded material: exponent must be >= 0");
    for (const auto& c : {ceramic_, metal_}) {
        if (!(c.young > 0.0) || !(c.density > 0.0))
            throw std::invalid_argument("graded material: moduli and density must be positive");
        if (!(c.poisson >= 0.0 && c.poisson < 0.5))
            throw std::invalid_argument("graded material: poisson ratio out of range [0, 0.5)");
    }
}

double GradedMaterial::ceramic_fraction(double z, double h) const {
    const double t = 0.5 + z / h;
    if (t < -1e-12 || t > 1.0 + 1e-12)
        throw std::domain_error("ceramic_fraction: z outside the thickness");
    const double tc = std::clamp(t, 0.0, 1.0);
    if (exponent_ == 0.0) return 1.0;
    return std::pow(tc, exponent_);
}

namespace {

double bulk_modulus(const Constituent& c) {
    return c.young / (3.0 * (1.0 - 2.0 * c.poisson));
}

double shear_modulus(const Constituent& c) {
    return c.young / (2.0 * (1.0 + c.poisson));
}

} // namespace

double GradedMaterial::young(double z, double h) const {
    const double vc = ceramic_fraction(z, h);
    const double vm = 1.0 - vc;
    if (scheme_ == Homogenization::RuleOfMixture)
        return ceramic_.young * vc + metal_.young * vm;

    // Mori-Tanaka estimate with the metal as matrix phase: effective
    // bulk and shear moduli, converted back to (E, nu).
    const double Km = bulk_modulus(metal_), Kc = bulk_modulus(ceramic_);
    const double Gm = shear_modulus(metal_), Gc = shear_modulus(ceramic_);
    const double K = Km + vc * (Kc - Km) /
                              (1.0 + vm * (Kc - Km) / (Km + 4.0 / 3.0 * Gm));
    const double f1 = Gm * (9.0 * Km + 8.0 * Gm) / (6.0 * (Km + 2.0 * Gm));
    const double G = Gm + vc * (Gc - Gm) / (1.0 + vm * (Gc - Gm) / (Gm + f1));
    return 9.0 * K * G / (3.0 * K + G);
}

double GradedMaterial::poisson(double z, double h) const {
    const double vc = ceramic_fraction(z, h);
    const double vm = 1.0 - vc;
    if (scheme_ == Homogenization::RuleOfMixture)
        return ceramic_.poisson * vc + metal_.poisson * vm;
    const double Km = bulk_modulus(metal_), Kc = bulk_modulus(ceramic_);
    const double Gm = shear_modulus(metal_), Gc = shear_modulus(ceramic_);
    const double K = Km + vc * (Kc - Km) /
                              (1.0 + vm * (Kc - Km) / (Km + 4.0 / 3.0 * Gm));
    const double f1 = Gm * (9.0 * Km + 8.0 * Gm) / (6.0 * (Km + 2.0 * Gm));
    const double G = Gm + vc * (Gc - Gm) / (1.0 + vm * (Gc - Gm) / (Gm + f1));
    return (3.0 * K - 2.0 * G) / (2.0 * (3.0 * K + G));
}

double GradedMaterial::density(double z, double h) const {
    // Mass mixes by volume regardless of the stiffness estimate.
    const double vc = ceramic_fraction(z, h);
    return ceramic_.density * vc + metal_.density * (1.0 - vc);
}

double PlateTheory::f(double z, double h) const {
    if (model == ShearModel::FirstOrder) return z;
    return z - 4.0 * z * z * z / (3.0 * h * h);
}

double PlateTheory::fp(double z, double h) const {
    if (model == ShearModel::FirstOrder) return 1.0;
    return 1.0 - 4.0 * z * z / (h * h);
}

PlateTheory PlateTheory::third_order() { return {ShearModel::ThirdOrder, 1.0}; }

PlateTheory PlateTheory::first_order(double shear_correction) {
    if (!(shear_correction > 0.0))
        throw std::invalid_argument("plate theory: shear correction must be positive");
    return {ShearModel::FirstOrder, shear_correction};
}

ConstitutiveSet integrate_constitutive(const GradedMaterial& mat, double h,
                                       const PlateTheory& theory) {
    if (!(h > 0.0)) throw std::invalid_argument("constitutive: thickness must be positive");

    ConstitutiveSet out;
    out.Db.setZero();
    out.Ds.setZero();
    out.m.setZero();

    // 20-point Gauss through the thickness: exact for the third-order
    // shear profile with integer grading exponents, and well below the
    // discretization error otherwise.
    const auto& gauss = gauss_legendre(20);
    for (const auto& gp : gauss) {
        const double z = 0.5 * h * gp.x;
        const double wz = 0.5 * h * gp.w;
        const double E = mat.young(z, h);
        const double nu = mat.poisson(z, h);
        const double rho = mat.density(z, h);
        const double f = theory.f(z, h);
        const double fp = theory.fp(z, h);

        Eigen::Matrix3d Q;
        const double c = E / (1.0 - nu * nu);
        Q << c, c * nu, 0.0, c * nu, c, 0.0, 0.0, 0.0, c * (1.0 - nu) / 2.0;

        const double lever[3] = {1.0, z, f};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                out.Db.block<3, 3>(3 * a, 3 * b) +=
                    wz * lever[a] * lever[b] * Q;
                out.m(a, b) += wz * lever[a] * lever[b] * rho;
            }

        const double G = E / (2.0 * (1.0 + nu));
        const double shear_scale =
            theory.model == ShearModel::FirstOrder ? theory.shear_correction : 1.0;
        out.Ds += wz * shear_scale * fp * fp * G * Eigen::Matrix2d::Identity();
    }

    // The bending stiffness must be positive semidefinite; it is
    // genuinely rank-deficient for the first-order theory, whose shear
    // profile coincides with the linear lever.
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 9, 9>> es(out.Db);
    if (es.info() != Eigen::Success ||
        es.eigenvalues().minCoeff() < -1e-10 * es.eigenvalues().maxCoeff())
        throw std::runtime_error("constitutive: bending stiffness indefinite");
    return out;
}

} // namespace xiga
