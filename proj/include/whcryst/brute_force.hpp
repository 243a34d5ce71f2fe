#pragma once

// Independent brute-force cross-checks for two-dimensional groups.
//
// These deliberately avoid the stabilizer and stratum machinery: everything
// is recomputed from the coset data alone by exact linear algebra over an
// explicit translation window. They are slow by design and exist so the
// production enumeration can be checked against a second derivation.

#include <vector>

#include "whcryst/cryst_group.hpp"

namespace whcryst {

/// Fixed points of the elements (J, a + t) with ||t||_inf <= radius, as
/// mod-lattice representatives in [0,1)^2: isolated fixed points together
/// with pairwise intersections of fixed lines. Sorted, exact, deduplicated.
/// Throws DimensionError for dim != 2.
std::vector<VecQ> brute_force_fixed_points(const CrystGroup& g, int radius = 2);

/// Number of orbit classes of maximal point stabilizers among those fixed
/// points: a candidate counts when its stabilizer is not properly contained
/// in the stabilizer of any candidate shifted across the window. Throws
/// DimensionError for dim != 2.
int brute_force_max_finite_classes(const CrystGroup& g, int radius = 2);

} // namespace whcryst
