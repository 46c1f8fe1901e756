#include "kplume/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "logspace.hpp"

namespace kplume {

namespace {

using detail::kNegInf;

void validate_half_dispersion(double alpha, double beta) {
  if (!(alpha >= 0.0) || !(beta >= 0.0) ||
      std::abs(alpha + beta - 0.5) > 1e-12)
    throw InvalidDispersion(
        "dispersion weights need alpha, beta >= 0 and alpha + beta = 1/2");
}

void validate_time(int n) {
  if (n < 1) throw std::invalid_argument("time n must be >= 1");
}

std::vector<double> log_probs(const std::vector<double>& probs) {
  std::vector<double> out(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i)
    out[i] = probs[i] > 0.0 ? std::log(probs[i]) : kNegInf;
  return out;
}

/// Conditional means per column, measured on a joint pmf. The closed forms
/// below give the marginal and the variance; taking the mean from the joint
/// pmf keeps the lateral-symmetry invariant an actual measurement.
std::map<int, double> column_means(const LatticePmf& pmf) {
  std::map<int, double> out;
  auto it = pmf.support.begin();
  while (it != pmf.support.end()) {
    const int x = it->first.x;
    detail::KahanSum mass, first;
    while (it != pmf.support.end() && it->first.x == x) {
      mass.add(it->second);
      first.add(static_cast<double>(it->first.y) * it->second);
      ++it;
    }
    if (mass.value() > 0.0) out[x] = first.value() / mass.value();
  }
  return out;
}

constexpr double kMassFloor = 1e-300;  // columns below this are omitted

}  // namespace

LatticePmf joint_pmf_simple(const KineticsParams& params, double alpha,
                            double beta, int n) {
  validate_half_dispersion(alpha, beta);
  validate_time(n);
  const OccupationPmf occ = occupation_pmf(params, n);
  const std::vector<double> lf = log_probs(occ.probs);
  const double la = alpha > 0.0 ? std::log(alpha) : kNegInf;
  const double lb = beta > 0.0 ? std::log(beta) : kNegInf;

  LatticePmf out;
  out.n = n;
  std::vector<double> terms;
  for (int x = 0; x <= 2 * n; ++x) {
    for (int y = -n; y <= n; ++y) {
      if (((x - y) & 1) != 0) continue;  // unreachable parity: mass exactly 0
      terms.clear();
      for (int k = (x + 1) / 2; k <= n; ++k) {
        if (lf[k] == kNegInf) continue;
        const int j_lo = std::max(0, x - k);
        const int j_hi = std::min((x + y) / 2, (x - y) / 2);
        for (int j = j_lo; j <= j_hi; ++j) {
          // j right, j+k-x left, (x+y)/2-j up, (x-y)/2-j down
          const int horizontal = 2 * j + k - x;
          const int vertical = x - 2 * j;
          double lt = lf[k] + detail::log_factorial(k) -
                      detail::log_factorial(j) -
                      detail::log_factorial(j + k - x) -
                      detail::log_factorial((x + y) / 2 - j) -
                      detail::log_factorial((x - y) / 2 - j);
          if (!detail::add_log_pow(lt, alpha, la, horizontal)) continue;
          if (!detail::add_log_pow(lt, beta, lb, vertical)) continue;
          terms.push_back(lt);
        }
      }
      const double p = detail::sum_exp(terms);
      if (p > 0.0) out.support[Point{x, y}] = p;
    }
  }
  return out;
}

CondVarCurve condvar_simple(const KineticsParams& params, double alpha,
                            double beta, int n) {
  validate_half_dispersion(alpha, beta);
  validate_time(n);
  const OccupationPmf occ = occupation_pmf(params, n);
  const std::vector<double> lf = log_probs(occ.probs);
  const double la = alpha > 0.0 ? std::log(alpha) : kNegInf;
  const double l2b = beta > 0.0 ? std::log(2.0 * beta) : kNegInf;
  const std::map<int, double> means =
      column_means(joint_pmf_simple(params, alpha, beta, n));

  CondVarCurve curve;
  std::vector<double> logs, weights;
  for (int x = 0; x <= 2 * n; ++x) {
    logs.clear();
    weights.clear();
    for (int k = (x + 1) / 2; k <= n; ++k) {
      if (lf[k] == kNegInf) continue;
      const int j_lo = std::max(0, x - k);
      const int j_hi = x / 2;
      for (int j = j_lo; j <= j_hi; ++j) {
        const int horizontal = 2 * j + k - x;
        const int vertical = x - 2 * j;  // number of lateral steps
        double lt = lf[k] + detail::log_factorial(k) -
                    detail::log_factorial(j) -
                    detail::log_factorial(j + k - x) -
                    detail::log_factorial(vertical);
        if (!detail::add_log_pow(lt, alpha, la, horizontal)) continue;
        if (!detail::add_log_pow(lt, 2.0 * beta, l2b, vertical)) continue;
        logs.push_back(lt);
        weights.push_back(static_cast<double>(vertical));
      }
    }
    double marginal = 0.0;
    const double variance = detail::weighted_exp_ratio(logs, weights, marginal);
    if (marginal < kMassFloor) continue;
    auto mean_it = means.find(x);
    const double mean = mean_it == means.end() ? 0.0 : mean_it->second;
    curve.entries.push_back({static_cast<double>(x), marginal, mean, variance});
  }
  return curve;
}

LatticePmf joint_pmf_45(const KineticsParams& params, double alpha,
                        double beta, int n) {
  validate_half_dispersion(alpha, beta);
  validate_time(n);
  const OccupationPmf occ = occupation_pmf(params, n);
  const std::vector<double> lf = log_probs(occ.probs);
  const double la = alpha > 0.0 ? std::log(alpha) : kNegInf;
  const double lb = beta > 0.0 ? std::log(beta) : kNegInf;

  LatticePmf out;
  out.n = n;
  std::vector<double> terms;
  for (int u = 0; u <= n; ++u) {  // column x = 2u
    for (int y = -n; y <= n; ++y) {
      terms.clear();
      for (int k = std::max(u, std::abs(y)); k <= n; ++k) {
        if (((k - y) & 1) != 0) continue;  // needs k = y (mod 2)
        if (lf[k] == kNegInf) continue;
        double lt = lf[k] + detail::log_binomial(k, u) +
                    detail::log_binomial(k, (k + y) / 2);
        if (!detail::add_log_pow(lt, alpha, la, u)) continue;
        if (!detail::add_log_pow(lt, beta, lb, k - u)) continue;
        terms.push_back(lt);
      }
      const double p = detail::sum_exp(terms);
      if (p > 0.0) out.support[Point{2 * u, y}] = p;
    }
  }
  return out;
}

CondVarCurve condvar_45(const KineticsParams& params, double alpha,
                        double beta, int n) {
  validate_half_dispersion(alpha, beta);
  validate_time(n);
  const OccupationPmf occ = occupation_pmf(params, n);
  const std::vector<double> lf = log_probs(occ.probs);
  const double l2a = alpha > 0.0 ? std::log(2.0 * alpha) : kNegInf;
  const double l2b = beta > 0.0 ? std::log(2.0 * beta) : kNegInf;
  const std::map<int, double> means =
      column_means(joint_pmf_45(params, alpha, beta, n));

  CondVarCurve curve;
  std::vector<double> logs, weights;
  for (int u = 0; u <= n; ++u) {
    logs.clear();
    weights.clear();
    for (int k = u; k <= n; ++k) {
      if (lf[k] == kNegInf) continue;
      double lt = lf[k] + detail::log_binomial(k, u);
      if (!detail::add_log_pow(lt, 2.0 * alpha, l2a, u)) continue;
      if (!detail::add_log_pow(lt, 2.0 * beta, l2b, k - u)) continue;
      logs.push_back(lt);
      weights.push_back(static_cast<double>(k));
    }
    double marginal = 0.0;
    const double variance = detail::weighted_exp_ratio(logs, weights, marginal);
    if (marginal < kMassFloor) continue;
    auto mean_it = means.find(2 * u);
    const double mean = mean_it == means.end() ? 0.0 : mean_it->second;
    curve.entries.push_back(
        {static_cast<double>(2 * u), marginal, mean, variance});
  }
  return curve;
}

namespace {

void validate_xi(double xi) {
  if (!(xi > 0.0) || !(xi < 0.25))
    throw InvalidXi("xi must lie strictly inside (0, 1/4)");
}

}  // namespace

LatticePmf joint_pmf_nn(const KineticsParams& params, double xi, int n) {
  validate_xi(xi);
  validate_time(n);
  const StepDistribution step = StepDistribution::nearest_neighbor(xi);
  return mixture_pmf(convolve_powers(step, n), occupation_pmf(params, n));
}

CondVarCurve condvar_nn(const KineticsParams& params, double xi, int n) {
  return condvar_from_pmf(joint_pmf_nn(params, xi, n));
}

namespace {

void validate_walk(const AsymmetricWalkParams& w) {
  if (!(w.right >= 0.0) || !(w.left >= 0.0) || !(w.up >= 0.0) ||
      !(w.down >= 0.0) ||
      std::abs(w.right + w.left + w.up + w.down - 1.0) > 1e-12)
    throw std::invalid_argument(
        "walk probabilities must be nonnegative and sum to 1");
}

/// One closed-form cell of the planar walk. For x >= 0 the paths make j+x
/// steps right and j left; the mirrored cell swaps the two exponents.
double asym_cell(const AsymmetricWalkParams& w, int n, int x, int y,
                 bool mirrored, std::vector<double>& terms) {
  const double lr = w.right > 0.0 ? std::log(w.right) : kNegInf;
  const double ll = w.left > 0.0 ? std::log(w.left) : kNegInf;
  const double lu = w.up > 0.0 ? std::log(w.up) : kNegInf;
  const double ld = w.down > 0.0 ? std::log(w.down) : kNegInf;
  terms.clear();
  const int j_hi = std::min((n - x - y) / 2, (n - x + y) / 2);
  for (int j = 0; j <= j_hi; ++j) {
    const int up_steps = (n - x + y) / 2 - j;
    const int down_steps = (n - x - y) / 2 - j;
    double lt = detail::log_factorial(n) - detail::log_factorial(j) -
                detail::log_factorial(j + x) -
                detail::log_factorial(up_steps) -
                detail::log_factorial(down_steps);
    const int r_exp = mirrored ? j : j + x;
    const int l_exp = mirrored ? j + x : j;
    if (!detail::add_log_pow(lt, w.right, lr, r_exp)) continue;
    if (!detail::add_log_pow(lt, w.left, ll, l_exp)) continue;
    if (!detail::add_log_pow(lt, w.up, lu, up_steps)) continue;
    if (!detail::add_log_pow(lt, w.down, ld, down_steps)) continue;
    terms.push_back(lt);
  }
  return detail::sum_exp(terms);
}

}  // namespace

LatticePmf asym_joint_pmf(const AsymmetricWalkParams& params, int n,
                          AsymMethod method) {
  validate_walk(params);
  validate_time(n);
  if (method == AsymMethod::Convolution) {
    const StepDistribution step = StepDistribution::planar_asymmetric(
        params.right, params.left, params.up, params.down);
    LatticePmf out;
    out.n = n;
    out.support = convolve_powers(step, n).layers.back();
    return out;
  }
  LatticePmf out;
  out.n = n;
  std::vector<double> terms;
  for (int x = 0; x <= n; ++x) {
    for (int y = -(n - x); y <= n - x; ++y) {
      if (((n - x - y) & 1) != 0) continue;  // needs y = n - x (mod 2)
      const double p = asym_cell(params, n, x, y, false, terms);
      if (p > 0.0) out.support[Point{x, y}] = p;
      if (x > 0) {
        const double q = asym_cell(params, n, x, y, true, terms);
        if (q > 0.0) out.support[Point{-x, y}] = q;
      }
    }
  }
  return out;
}

std::map<int, double> asym_marginal_x(const AsymmetricWalkParams& params,
                                      int n) {
  validate_walk(params);
  validate_time(n);
  const double lr = params.right > 0.0 ? std::log(params.right) : kNegInf;
  const double ll = params.left > 0.0 ? std::log(params.left) : kNegInf;
  const double vert = params.up + params.down;
  const double lv = vert > 0.0 ? std::log(vert) : kNegInf;

  std::map<int, double> out;
  std::vector<double> terms;
  for (int x = -n; x <= n; ++x) {
    const int ax = std::abs(x);
    terms.clear();
    for (int i = 0; i <= (n - ax) / 2; ++i) {
      double lt = detail::log_factorial(n) - detail::log_factorial(i) -
                  detail::log_factorial(i + ax) -
                  detail::log_factorial(n - ax - 2 * i);
      const int r_exp = x >= 0 ? i + ax : i;
      const int l_exp = x >= 0 ? i : i + ax;
      if (!detail::add_log_pow(lt, params.right, lr, r_exp)) continue;
      if (!detail::add_log_pow(lt, params.left, ll, l_exp)) continue;
      if (!detail::add_log_pow(lt, vert, lv, n - ax - 2 * i)) continue;
      terms.push_back(lt);
    }
    const double p = detail::sum_exp(terms);
    if (p > 0.0) out[x] = p;
  }
  return out;
}

double check_conditional_symmetry(const AsymmetricWalkParams& params, int n,
                                  AsymMethod method) {
  const LatticePmf joint = asym_joint_pmf(params, n, method);
  std::map<int, double> marginal;
  if (method == AsymMethod::ClosedForm) {
    marginal = asym_marginal_x(params, n);
  } else {
    marginal = joint.marginal_x();  // keeps the route fully engine-based
  }
  auto marg = [&](int x) {
    auto it = marginal.find(x);
    return it == marginal.end() ? 0.0 : it->second;
  };
  double worst = 0.0;
  for (int x = 0; x <= n; ++x) {
    const double mp = marg(x), mm = marg(-x);
    for (int y = -n; y <= n; ++y) {
      const double d =
          joint.at(x, y) * mm - joint.at(-x, y) * mp;
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst;
}

}  // namespace kplume
