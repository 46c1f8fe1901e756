#pragma once

#include <cstdint>
#include <map>
#include <variant>

#include "kplume/grid.hpp"
#include "kplume/kinetics.hpp"
#include "kplume/lattice.hpp"

namespace kplume {

/// Gaussian dispersion law for the simulator (the full analytic model lives
/// in gaussian.hpp; the simulator only needs the step variances).
struct GaussianDispersion {
  double alpha = 0.25;
  double beta = 0.25;
};

using McModel =
    std::variant<SimpleRW, FortyFive, NearestNeighbor, GaussianDispersion>;

struct SimulationConfig {
  McModel model;
  KineticsParams kinetics;
  int n = 1;
  std::int64_t particles = 1;
  std::uint64_t seed = 0;
  double bin_width = 0.1;  // Gaussian models only: x/y binning width
  int threads = 0;         // 0 = KPLUME_THREADS env var, then hardware
};

/// Per-column power sums of the lateral coordinate, accumulated about y = 0
/// (every model is symmetric in y, so zero is the natural shift and the
/// second-moment subtraction loses nothing).
struct ColumnStats {
  std::int64_t count = 0;
  double sy = 0.0;
  double sy2 = 0.0;
  double sy3 = 0.0;
  double sy4 = 0.0;

  double mean() const;
  double variance() const;
  /// Fourth central moment estimate.
  double fourth_central() const;
  /// Standard error of the sample variance, sqrt((m4 - var^2) / count).
  double variance_stderr() const;
};

/// Deterministic summary of a particle run. For lattice models the histogram
/// is keyed by exact integer positions and `columns` by x; for Gaussian
/// models both are keyed by bin indices (bin i covers [i*w, (i+1)*w)).
struct EmpiricalSummary {
  std::int64_t particles = 0;
  int n = 0;
  bool lattice = true;
  double bin_width = 0.0;  // 0 for lattice models

  std::map<Point, std::int64_t> histogram;
  std::map<int, ColumnStats> columns;

  double bin_center(int index) const;
  std::map<int, double> empirical_marginal() const;
  /// Conditional mean/variance per column with at least min_count particles.
  CondVarCurve condvar(std::int64_t min_count = 1) const;
};

/// Runs `particles` independent particles for n steps. Particle i draws from
/// its own generator keyed by (seed, i), and per-block partial results are
/// merged in block order, so the summary is bitwise identical for any thread
/// count.
EmpiricalSummary simulate(const SimulationConfig& config);

/// Total variation distance (1/2) sum |p_hat - p| between the empirical
/// histogram (lattice models only) and an exact pmf, over the union support.
double total_variation(const EmpiricalSummary& empirical,
                       const LatticePmf& exact);

}  // namespace kplume
