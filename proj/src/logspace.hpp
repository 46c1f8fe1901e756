#pragma once

// Internal numeric helpers: log-factorials, compensated summation and
// log-sum-exp over a term buffer. Not installed.

#include <cmath>
#include <limits>
#include <vector>

namespace kplume::detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(m!). Table-backed for m < 16384 (each entry from lgamma directly, no
/// cumulative drift); larger arguments fall through to lgamma.
inline double log_factorial(int m) {
  static const std::vector<double> table = [] {
    std::vector<double> t(16384);
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = std::lgamma(static_cast<double>(i) + 1.0);
    return t;
  }();
  if (m < 0) return kNegInf;
  if (static_cast<std::size_t>(m) < table.size()) return table[m];
  return std::lgamma(static_cast<double>(m) + 1.0);
}

/// log C(m, l), with C(m, l) = 0 outside 0 <= l <= m.
inline double log_binomial(int m, int l) {
  if (l < 0 || l > m) return kNegInf;
  return log_factorial(m) - log_factorial(l) - log_factorial(m - l);
}

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

/// Adds e * log_p to acc under the 0^0 = 1 convention. Returns false when
/// the whole term vanishes (p == 0 with a positive exponent).
inline bool add_log_pow(double& acc, double p, double log_p, int e) {
  if (e == 0) return true;
  if (p == 0.0) return false;
  acc += static_cast<double>(e) * log_p;
  return true;
}

/// exp-sum of a buffer of log-terms with a shared max shift and compensated
/// accumulation. Returns 0 for an empty buffer.
inline double sum_exp(const std::vector<double>& logs) {
  double m = kNegInf;
  for (double l : logs)
    if (l > m) m = l;
  if (m == kNegInf) return 0.0;
  KahanSum s;
  for (double l : logs) s.add(std::exp(l - m));
  return std::exp(m) * s.value();
}

/// Ratio sum(w_i e^{l_i}) / sum(e^{l_i}) plus the common scale, without ever
/// leaving the stable shifted domain. `scaled_mass` receives
/// exp(max) * sum(e^{l - max}) (the denominator in absolute terms).
inline double weighted_exp_ratio(const std::vector<double>& logs,
                                 const std::vector<double>& weights,
                                 double& scaled_mass) {
  double m = kNegInf;
  for (double l : logs)
    if (l > m) m = l;
  if (m == kNegInf) {
    scaled_mass = 0.0;
    return 0.0;
  }
  KahanSum num, den;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    double e = std::exp(logs[i] - m);
    den.add(e);
    num.add(weights[i] * e);
  }
  scaled_mass = std::exp(m) * den.value();
  return num.value() / den.value();
}

}  // namespace kplume::detail
