#include "kplume/kinetics.hpp"

#include <cmath>
#include <utility>

#include "logspace.hpp"

namespace kplume {

InitialDistribution InitialDistribution::custom(double pf) {
  if (!(pf >= 0.0 && pf <= 1.0))
    throw std::invalid_argument("custom initial probability must lie in [0, 1]");
  return {Kind::Custom, pf};
}

InitialDistribution InitialDistribution::parse(const std::string& text) {
  if (text == "stationary") return stationary();
  if (text == "free") return free();
  if (text == "adsorbed") return adsorbed();
  if (text.rfind("custom:", 0) == 0) {
    std::size_t pos = 0;
    double pf = 0.0;
    try {
      pf = std::stod(text.substr(7), &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse '" + text + "'");
    }
    if (pos != text.size() - 7)
      throw std::invalid_argument("cannot parse '" + text + "'");
    return custom(pf);
  }
  throw std::invalid_argument("unknown initial distribution '" + text + "'");
}

std::string InitialDistribution::to_string() const {
  switch (kind) {
    case Kind::Stationary:
      return "stationary";
    case Kind::Free:
      return "free";
    case Kind::Adsorbed:
      return "adsorbed";
    case Kind::Custom:
      break;
  }
  // fmt17 lives in io; a plain max-precision print is enough here
  char buf[40];
  std::snprintf(buf, sizeof(buf), "custom:%.17g", pf);
  return buf;
}

KineticsParams::KineticsParams(double a_in, double b_in,
                               InitialDistribution init_in)
    : a(a_in), b(b_in), init(init_in) {
  if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0))
    throw std::invalid_argument("transition probabilities must lie in [0, 1]");
  if (a + b == 0.0)
    throw DegenerateChain("a = b = 0: the stationary distribution is undefined");
  if (init.kind == InitialDistribution::Kind::Custom &&
      !(init.pf >= 0.0 && init.pf <= 1.0))
    throw std::invalid_argument("custom initial probability must lie in [0, 1]");
}

std::pair<double, double> stationary(const KineticsParams& params) {
  // Constructor guarantees a + b > 0; keep the explicit error for callers
  // that aggregate manually.
  if (params.a + params.b == 0.0)
    throw DegenerateChain("a = b = 0: the stationary distribution is undefined");
  double denom = params.a + params.b;
  return {params.b / denom, params.a / denom};
}

std::pair<double, double> KineticsParams::initial() const {
  switch (init.kind) {
    case InitialDistribution::Kind::Stationary:
      return stationary(*this);
    case InitialDistribution::Kind::Free:
      return {1.0, 0.0};
    case InitialDistribution::Kind::Adsorbed:
      return {0.0, 1.0};
    case InitialDistribution::Kind::Custom:
      return {init.pf, 1.0 - init.pf};
  }
  return {0.0, 1.0};  // unreachable
}

double OccupationPmf::mass() const {
  detail::KahanSum s;
  for (double p : probs) s.add(p);
  return s.value();
}

namespace {

inline double at_or_zero(const std::vector<double>& v, int k) {
  return (k >= 0 && static_cast<std::size_t>(k) < v.size()) ? v[k] : 0.0;
}

}  // namespace

OccupationPmf occupation_pmf(const KineticsParams& params, int n) {
  if (n < 1) throw std::invalid_argument("occupation_pmf requires n >= 1");
  const double a = params.a, b = params.b;
  auto [pf, pa] = params.initial();

  std::vector<double> prev = {pa, pf};  // f_1
  if (n == 1) return {1, std::move(prev)};

  std::vector<double> curr = {pa * (1.0 - b), pa * b + pf * a,
                              pf * (1.0 - a)};  // f_2
  for (int m = 3; m <= n; ++m) {
    std::vector<double> next(static_cast<std::size_t>(m) + 1, 0.0);
    next[0] = (1.0 - b) * curr[0];
    for (int k = 1; k <= m; ++k) {
      next[k] = (1.0 - b) * at_or_zero(curr, k) +
                (1.0 - a) * at_or_zero(curr, k - 1) -
                (1.0 - a - b) * at_or_zero(prev, k - 1);
    }
    prev.swap(curr);
    curr.swap(next);
  }
  return {n, std::move(curr)};
}

double occupation_mean(const OccupationPmf& pmf) {
  detail::KahanSum s;
  for (std::size_t k = 0; k < pmf.probs.size(); ++k)
    s.add(static_cast<double>(k) * pmf.probs[k]);
  return s.value();
}

ModeReport count_modes(const std::vector<double>& values, double tol) {
  ModeReport report;
  const int m = static_cast<int>(values.size());
  int i = 0;
  while (i < m) {
    int j = i;
    while (j + 1 < m && std::abs(values[j + 1] - values[i]) <= tol) ++j;
    const bool rises_left = (i == 0) || (values[i] > values[i - 1] + tol);
    const bool falls_right = (j == m - 1) || (values[i] > values[j + 1] + tol);
    if (rises_left && falls_right) {
      ++report.count;
      report.locations.push_back(i);
    }
    i = j + 1;
  }
  return report;
}

ModeReport count_modes(const OccupationPmf& pmf, double tol) {
  return count_modes(pmf.probs, tol);
}

}  // namespace kplume
