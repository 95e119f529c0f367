#pragma once

// Stock hypersurfaces for the line-counting pipeline.

#include <cstdint>

#include "trisign/jet.hpp"

namespace trisign {

// Sum of (2n-1)-th powers of all n+2 coordinates.  For n = 2 this is the
// Fermat cubic surface with exactly 3 real lines.  For n >= 3 the Fano
// scheme is positive-dimensional, so enumeration is expected to refuse it.
Hypersurface fermat_hypersurface(int n);

// The diagonal cubic surface sum y_i^3 = 0, sum y_i = 0 in P^4, written in
// the chart y_4 = -(y_0+...+y_3).  All 27 lines are real.
Hypersurface clebsch_cubic();

// Dense form with integer coefficients drawn uniformly from [-bound, bound]
// (zero coefficients dropped).  Deterministic in the seed.
Hypersurface random_hypersurface(int n, std::uint64_t seed, int bound = 9);

}  // namespace trisign
