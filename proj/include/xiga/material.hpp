#pragma once

#include <string>

#include <Eigen/Dense>

namespace xiga {

// Isotropic constituent of a two-phase graded plate.
struct Constituent {
    double young;   // Pa
    double poisson;
    double density; // kg/m^3
};

Constituent material_preset(const std::string& name);

enum class Homogenization { RuleOfMixture, MoriTanaka };

// Through-thickness power-law grading between a metal (bottom face,
// z = -h/2) and a ceramic (top face, z = +h/2).
class GradedMaterial {
public:
    GradedMaterial(Constituent ceramic, Constituent metal, double exponent,
                   Homogenization scheme);

    // Ceramic volume fraction at z in [-h/2, h/2].
    double ceramic_fraction(double z, double h) const;

    // Effective isotropic properties at z.
    double young(double z, double h) const;
    double poisson(double z, double h) const;
    double density(double z, double h) const;

    double exponent() const { return exponent_; }
    Homogenization scheme() const { return scheme_; }
    const Constituent& ceramic() const { return ceramic_; }
    const Constituent& metal() const { return metal_; }

private:
    Constituent ceramic_, metal_;
    double exponent_;
    Homogenization scheme_;
};

enum class ShearModel { ThirdOrder, FirstOrder };

// Transverse shear distribution through the thickness: displacement
// u = u0 + z*u1 + f(z)*u2 with the shear strain proportional to f'(z).
struct PlateTheory {
    ShearModel model = ShearModel::ThirdOrder;
    double shear_correction = 5.0 / 6.0; // used by the first-order model only

    double f(double z, double h) const;
    double fp(double z, double h) const;

    static PlateTheory third_order();
    static PlateTheory first_order(double shear_correction = 5.0 / 6.0);
};

// Thickness-integrated stiffness and inertia. Db couples the membrane
// strain, the curvature from w, and the curvature from the shear
// rotations (3 blocks of 3); Ds is the transverse shear stiffness; m
// the 3x3 inertia coupling the same three displacement groups.
struct ConstitutiveSet {
    Eigen::Matrix<double, 9, 9> Db;
    Eigen::Matrix2d Ds;
    Eigen::Matrix3d m;
};

ConstitutiveSet integrate_constitutive(const GradedMaterial& mat, double h,
                                       const PlateTheory& theory);

} // namespace xiga
