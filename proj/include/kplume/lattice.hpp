#pragma once

#include <map>
#include <stdexcept>

#include "kplume/convolution.hpp"
#include "kplume/grid.hpp"
#include "kplume/kinetics.hpp"

namespace kplume {

class InvalidDispersion : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidXi : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dispersion models. The free step is the dispersion step plus a +1 drift in
// x. SimpleRW and FortyFive require alpha, beta >= 0 and alpha + beta = 1/2;
// NearestNeighbor requires 0 < xi < 1/4.
struct SimpleRW {
  double alpha = 0.25;  // (+-1, 0) w.p. alpha each
  double beta = 0.25;   // (0, +-1) w.p. beta each
};

struct FortyFive {
  double alpha = 0.25;  // (1, +-1) w.p. alpha each
  double beta = 0.25;   // (-1, +-1) w.p. beta each
};

struct NearestNeighbor {
  // (+-1, +-1) w.p. xi each, (+-1, 0) w.p. 1/2 - 2*xi each; a mean-zero walk
  // (the advection drift does not apply to this model)
  double xi = 0.125;
};

/// Exact pmf of the kinetic walk with simple-random-walk dispersion at time
/// n. Support lies in 0 <= x <= 2n, |y| <= n with x = y (mod 2); cells of
/// the opposite parity carry exactly zero mass. Each multinomial term is
/// evaluated in log space and the terms of a cell are accumulated with
/// compensated summation.
LatticePmf joint_pmf_simple(const KineticsParams& params, double alpha,
                            double beta, int n);

/// Marginal, conditional mean and conditional variance of the lateral
/// coordinate per column x = 0..2n. The marginal and variance come from the
/// closed-form column sums; the conditional mean is measured on the joint
/// pmf so that the lateral symmetry is checked rather than assumed. Columns
/// with marginal mass below 1e-300 are omitted.
CondVarCurve condvar_simple(const KineticsParams& params, double alpha,
                            double beta, int n);

/// Exact pmf of the kinetic walk with 45-degree dispersion: only even x are
/// reachable, and P(x = 2u) mixes binomial column laws over the occupation
/// count.
LatticePmf joint_pmf_45(const KineticsParams& params, double alpha,
                        double beta, int n);

/// Conditional variance of the 45-degree model. Given the column 2u, the
/// variance equals the conditional expectation of the number of free steps,
/// E[K_n | X = 2u]; the curve is nondecreasing in x.
CondVarCurve condvar_45(const KineticsParams& params, double alpha,
                        double beta, int n);

/// Nearest-neighbor dispersion has no closed form here; the pmf is the
/// occupation mixture of iterated convolutions of its step law. Because the
/// walk is mean-zero, x = K_n (mod 2) on every path, and that parity
/// coupling makes the conditional variance non-monotone in x.
LatticePmf joint_pmf_nn(const KineticsParams& params, double xi, int n);
CondVarCurve condvar_nn(const KineticsParams& params, double xi, int n);

/// Plain planar walk from the origin (no kinetics, no drift) with step
/// probabilities right/left/up/down.
struct AsymmetricWalkParams {
  double right = 0.25;  // (+1, 0)
  double left = 0.25;   // (-1, 0)
  double up = 0.25;     // (0, +1)
  double down = 0.25;   // (0, -1)
};

enum class AsymMethod { ClosedForm, Convolution };

/// Exact pmf of the n-step walk; only cells with y = n - x (mod 2) are
/// reachable. The closed form evaluates the lattice-path sums directly; the
/// convolution route goes through the generic engine, so the two are
/// independent evaluations of the same law.
LatticePmf asym_joint_pmf(const AsymmetricWalkParams& params, int n,
                          AsymMethod method = AsymMethod::ClosedForm);

/// Closed-form marginal P(X_n = x) for x = -n..n.
std::map<int, double> asym_marginal_x(const AsymmetricWalkParams& params,
                                      int n);

/// Max over x = 0..n and admissible y of
///   |P(x, y) P(X = -x) - P(-x, y) P(X = x)|,
/// the cross-multiplied form of the mirror identity
///   P(Y = y | X = x) = P(Y = y | X = -x).
double check_conditional_symmetry(const AsymmetricWalkParams& params, int n,
                                  AsymMethod method = AsymMethod::ClosedForm);

}  // namespace kplume
