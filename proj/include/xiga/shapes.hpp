#pragma once

#include "xiga/patch.hpp"

namespace xiga {

// Rectangle [0,L] x [0,W], degree >= 2 in both directions, n_el x n_el
// uniform elements. Geometry is exact (bilinear reproduced at any
// degree), all weights 1.
Patch square_patch(double length, double width, int degree, int n_el);

// Full disk of radius R centered at the origin as one rational patch.
// Boundary is the exact circle; the map degenerates at the four
// parametric corners, which interior quadrature points never hit.
Patch circular_patch(double radius, int degree, int n_el);

// Half annulus y >= 0 between radii r_inner < r_outer. Parameter u runs
// along the circumference from theta = pi (u=0) to theta = 0 (u=1),
// v radially from the inner edge (v=0) to the outer (v=1). Circular
// edges are exact; the radius is affine in v.
Patch half_annulus_patch(double r_inner, double r_outer, int degree, int n_el);

} // namespace xiga
