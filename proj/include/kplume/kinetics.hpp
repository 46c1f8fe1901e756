#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kplume {

/// Thrown when a = b = 0: the chain never moves, so the stationary
/// distribution is undefined.
class DegenerateChain : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Initial distribution of the free/adsorbed chain.
struct InitialDistribution {
  enum class Kind { Stationary, Free, Adsorbed, Custom };

  Kind kind = Kind::Stationary;
  double pf = 0.0;  // Custom only: probability of starting free

  static InitialDistribution stationary() { return {Kind::Stationary, 0.0}; }
  static InitialDistribution free() { return {Kind::Free, 0.0}; }
  static InitialDistribution adsorbed() { return {Kind::Adsorbed, 0.0}; }
  static InitialDistribution custom(double pf);

  /// Accepts "stationary", "free", "adsorbed" or "custom:<pf>".
  static InitialDistribution parse(const std::string& text);
  std::string to_string() const;
};

/// Two-state kinetics: a = P(free -> adsorbed) and b = P(adsorbed -> free)
/// per time step, plus the distribution of the initial state.
struct KineticsParams {
  double a = 0.0;
  double b = 0.0;
  InitialDistribution init;

  KineticsParams() = default;
  KineticsParams(double a, double b,
                 InitialDistribution init = InitialDistribution::stationary());

  /// (pi_f, pi_a) that the initial distribution resolves to.
  std::pair<double, double> initial() const;
};

/// Stationary distribution (b/(a+b), a/(a+b)) of the two-state chain.
std::pair<double, double> stationary(const KineticsParams& params);

/// Distribution of K_n, the number of free steps among the first n.
/// probs[k] = P(K_n = k), k = 0..n.
struct OccupationPmf {
  int n = 0;
  std::vector<double> probs;

  double mass() const;
};

/// Exact pmf of K_n via the three-term recurrence
///   f_{m}(k) = (1-b) f_{m-1}(k) + (1-a) f_{m-1}(k-1) - (1-a-b) f_{m-2}(k-1)
/// for k >= 1, with f_m(0) = (1-b) f_{m-1}(0) on the boundary (the event
/// {K_m = 0} is the single all-adsorbed path). Requires n >= 1.
OccupationPmf occupation_pmf(const KineticsParams& params, int n);

/// E[K_n] = sum_k k * probs[k].
double occupation_mean(const OccupationPmf& pmf);

/// Local maxima of a nonnegative sequence. A plateau of values equal within
/// `tol` counts as a single mode; `locations` holds the first index of each
/// plateau.
struct ModeReport {
  int count = 0;
  std::vector<int> locations;
};

ModeReport count_modes(const std::vector<double>& values, double tol = 1e-12);
ModeReport count_modes(const OccupationPmf& pmf, double tol = 1e-12);

}  // namespace kplume
