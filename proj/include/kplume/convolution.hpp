#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "kplume/grid.hpp"
#include "kplume/kinetics.hpp"

namespace kplume {

/// Thrown when an iterated convolution would exceed the point budget.
class SupportOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StepAtom {
  int dx = 0;
  int dy = 0;
  double p = 0.0;
};

/// Finite-support step law on Z^2. Atoms are kept sorted by (dx, dy) with
/// duplicates merged; probabilities must be nonnegative and sum to 1 within
/// 1e-12. simple_rw and forty_five are the advected free-step laws (the +1
/// drift folded into dx); nearest_neighbor is the drift-free diagonal walk.
struct StepDistribution {
  std::vector<StepAtom> support;

  static StepDistribution from_atoms(std::vector<StepAtom> atoms);

  /// (2,0) and (0,0) w.p. alpha each, (1,+1) and (1,-1) w.p. beta each.
  static StepDistribution simple_rw(double alpha, double beta);
  /// (2,+1) and (2,-1) w.p. alpha each, (0,+1) and (0,-1) w.p. beta each.
  static StepDistribution forty_five(double alpha, double beta);
  /// (+-1,+-1) w.p. xi each, (+-1,0) w.p. 1/2 - 2*xi each; mean zero, so no
  /// drift: conditioning on x couples to the parity of the free-step count,
  /// which is what makes its lateral spread non-monotone.
  static StepDistribution nearest_neighbor(double xi);
  /// Unit steps right/left/up/down with the given probabilities (no drift).
  static StepDistribution planar_asymmetric(double right, double left,
                                            double up, double down);
  static StepDistribution point_mass(int dx, int dy);
};

/// layers[k] = exact pmf of the k-step sum; layers[0] is the point mass at
/// the origin.
struct ConvolutionTable {
  std::vector<SparseGrid> layers;
};

/// Iterated convolution of the step law, layer by layer. Throws
/// SupportOverflow once the total number of stored points exceeds the budget.
ConvolutionTable convolve_powers(const StepDistribution& step, int n,
                                 std::size_t point_budget = 10'000'000);

/// sum_k occupation.probs[k] * layers[k]. The table must be at least as deep
/// as the occupation pmf.
LatticePmf mixture_pmf(const ConvolutionTable& table,
                       const OccupationPmf& occupation);

/// Column-wise conditional mean and variance of y given x. Columns whose
/// total mass is below `mass_threshold` are omitted rather than reported as
/// 0/0.
CondVarCurve condvar_from_pmf(const LatticePmf& pmf,
                              double mass_threshold = 1e-300);

}  // namespace kplume
