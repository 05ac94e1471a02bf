#pragma once

#include <vector>

#include "xiga/patch.hpp"

namespace xiga {

// Knot insertion. Every value in new_knots_u / new_knots_v must lie
// strictly inside an existing span of the respective knot vector and
// values may repeat only up to the continuity budget (final interior
// multiplicity <= degree). Geometry and weights are preserved exactly.
Patch h_refine(const Patch& patch, std::vector<double> new_knots_u,
               std::vector<double> new_knots_v);

// Degree elevation to the target degrees (>= current). Interior knot
// multiplicities grow with the degree so the continuity of the
// geometry is preserved, as is the geometry itself.
Patch elevate_degree(const Patch& patch, int degree_u, int degree_v);

// Break points {i/n} for i=1..n-1 that are not already knots. Helper
// for building uniform meshes on patches that carry interior knots.
std::vector<double> missing_uniform_breaks(const KnotVector& kv, int n_elements);

} // namespace xiga
