#pragma once

#include <stdexcept>
#include <utility>

#include "kplume/grid.hpp"
#include "kplume/kinetics.hpp"

namespace kplume {

/// Thrown when P(K_n = 0) = 1: the law is the pure atom at the origin and
/// lateral conditional moments are undefined.
class AllMassAtomic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Kinetic walk whose free-step dispersion is Gaussian: the x-increment is
/// 1 + N(0, 2*alpha) and the y-increment N(0, 2*beta). The position law is
/// the mixture of an atom at the origin with mass P(K_n = 0) and a
/// continuous part.
struct GaussianModel {
  KineticsParams params;
  double alpha = 0.25;  // Var(x-dispersion) / 2
  double beta = 0.25;   // Var(y-dispersion) / 2
  int n = 1;
};

/// Mass of the atom at the origin, P(K_n = 0).
double atom_mass(const GaussianModel& model);

/// Density of the continuous part at (x, y):
///   (1 - f0)^-1 sum_{k>=1} f(k) / (4 pi k sqrt(alpha beta))
///                  * exp(-(x-k)^2/(4k alpha) - y^2/(4k beta)),
/// where f is the occupation pmf and f0 = f(0). Evaluated by log-sum-exp
/// with a shared max-log shift. Returns 0 when the law is the pure atom.
double density(const GaussianModel& model, double x, double y);

/// Density of S_X's continuous part, normalized like `density`:
///   (1 - f0)^-1 sum_{k>=1} f(k) exp(-(x-k)^2/(4k alpha)) / (2 sqrt(pi k alpha)).
double marginal_density_x(const GaussianModel& model, double x);

/// Conditional variance of the lateral coordinate at longitudinal position x:
///   2 beta (1 - f0) * sum_k w_k(x) f(k) sqrt(k) / sum_k w_k(x) f(k) / sqrt(k)
/// with w_k(x) = exp(-(x-k)^2 / (4 k alpha)). The global prefactor (1 - f0)
/// is part of the definition implemented here; see condvar curve docs and
/// the Monte Carlo cross-checks for how it relates to the per-slice sample
/// variance. Throws AllMassAtomic when f0 = 1.
double condvar_gaussian(const GaussianModel& model, double x);

/// Curve sampled on the grid x = x_min, x_min + step, ..., x_max. The
/// marginal column is the actual Lebesgue density of the continuous part of
/// S_X, i.e. (1 - f0) * marginal_density_x. The conditional mean is 0 by the
/// y-symmetry of every mixture component.
CondVarCurve condvar_gaussian_curve(const GaussianModel& model, double x_min,
                                    double x_max, double step);

/// Default evaluation window [-4 sqrt(2 n alpha), n + 4 sqrt(2 n alpha)]:
/// covers all non-negligible mass.
std::pair<double, double> default_x_range(const GaussianModel& model);

}  // namespace kplume
