#pragma once

#include <vector>

#include "kplume/convolution.hpp"
#include "kplume/grid.hpp"
#include "kplume/kinetics.hpp"
#include "kplume/lattice.hpp"

namespace kplume {

// Exhaustive-path reference implementations. These enumerate every chain
// path (and every step outcome) instead of using any recurrence, closed form
// or convolution, so they are independent oracles for the fast paths. Cost
// is exponential in n; they refuse n beyond a small bound.

/// P(K_n = k) by enumerating all 2^n state sequences. n <= 20.
std::vector<double> enumerate_occupation_pmf(const KineticsParams& params,
                                             int n);

/// Joint position pmf of a kinetic walk with the given (already advected)
/// step law, by enumerating chain paths times step outcomes. Practical for
/// n <= 8 with small step supports.
LatticePmf enumerate_kinetic_pmf(const KineticsParams& params,
                                 const StepDistribution& step, int n);

/// Position pmf of the plain planar walk by enumerating all 4^n paths.
/// n <= 10.
LatticePmf enumerate_planar_walk_pmf(const AsymmetricWalkParams& params,
                                     int n);

}  // namespace kplume
