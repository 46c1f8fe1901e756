#include "kplume/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "logspace.hpp"

namespace kplume {

namespace {

using detail::kNegInf;

struct Mixture {
  OccupationPmf occ;
  std::vector<double> lf;  // log occupation probabilities
  double f0 = 0.0;
};

Mixture prepare(const GaussianModel& model) {
  if (!(model.alpha > 0.0) || !(model.beta > 0.0))
    throw std::invalid_argument("gaussian dispersion needs alpha, beta > 0");
  if (model.n < 1) throw std::invalid_argument("time n must be >= 1");
  Mixture m;
  m.occ = occupation_pmf(model.params, model.n);
  m.lf.resize(m.occ.probs.size());
  for (std::size_t k = 0; k < m.occ.probs.size(); ++k)
    m.lf[k] = m.occ.probs[k] > 0.0 ? std::log(m.occ.probs[k]) : kNegInf;
  m.f0 = m.occ.probs[0];
  return m;
}

double density_impl(const Mixture& m, const GaussianModel& model, double x,
                    double y) {
  if (m.f0 == 1.0) return 0.0;  // pure atom: no continuous part
  std::vector<double> terms;
  terms.reserve(m.lf.size());
  for (int k = 1; k <= model.n; ++k) {
    if (m.lf[k] == kNegInf) continue;
    const double dk = static_cast<double>(k);
    terms.push_back(m.lf[k] -
                    std::log(4.0 * std::numbers::pi * dk *
                             std::sqrt(model.alpha * model.beta)) -
                    (x - dk) * (x - dk) / (4.0 * dk * model.alpha) -
                    y * y / (4.0 * dk * model.beta));
  }
  return detail::sum_exp(terms) / (1.0 - m.f0);
}

double marginal_impl(const Mixture& m, const GaussianModel& model, double x) {
  if (m.f0 == 1.0) return 0.0;
  std::vector<double> terms;
  terms.reserve(m.lf.size());
  for (int k = 1; k <= model.n; ++k) {
    if (m.lf[k] == kNegInf) continue;
    const double dk = static_cast<double>(k);
    terms.push_back(m.lf[k] -
                    std::log(2.0 * std::sqrt(std::numbers::pi * dk * model.alpha)) -
                    (x - dk) * (x - dk) / (4.0 * dk * model.alpha));
  }
  return detail::sum_exp(terms) / (1.0 - m.f0);
}

double condvar_impl(const Mixture& m, const GaussianModel& model, double x) {
  if (m.f0 == 1.0)
    throw AllMassAtomic("P(K_n = 0) = 1: lateral spread is undefined");
  // Shared max-log shift over the base terms log f(k) - (x-k)^2/(4 k alpha);
  // the +-(1/2) log k factors ride along as weights.
  double max_log = kNegInf;
  std::vector<double> base(m.lf.size(), kNegInf);
  for (int k = 1; k <= model.n; ++k) {
    if (m.lf[k] == kNegInf) continue;
    const double dk = static_cast<double>(k);
    base[k] = m.lf[k] - (x - dk) * (x - dk) / (4.0 * dk * model.alpha);
    if (base[k] > max_log) max_log = base[k];
  }
  detail::KahanSum num, den;
  for (int k = 1; k <= model.n; ++k) {
    if (base[k] == kNegInf) continue;
    const double e = std::exp(base[k] - max_log);
    const double rk = std::sqrt(static_cast<double>(k));
    num.add(e * rk);
    den.add(e / rk);
  }
  return 2.0 * model.beta * (1.0 - m.f0) * num.value() / den.value();
}

}  // namespace

double atom_mass(const GaussianModel& model) { return prepare(model).f0; }

double density(const GaussianModel& model, double x, double y) {
  return density_impl(prepare(model), model, x, y);
}

double marginal_density_x(const GaussianModel& model, double x) {
  return marginal_impl(prepare(model), model, x);
}

double condvar_gaussian(const GaussianModel& model, double x) {
  return condvar_impl(prepare(model), model, x);
}

CondVarCurve condvar_gaussian_curve(const GaussianModel& model, double x_min,
                                    double x_max, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be > 0");
  if (!(x_max >= x_min)) throw std::invalid_argument("empty x range");
  const Mixture m = prepare(model);
  if (m.f0 == 1.0)
    throw AllMassAtomic("P(K_n = 0) = 1: lateral spread is undefined");
  CondVarCurve curve;
  const long count = std::lround(std::floor((x_max - x_min) / step + 1e-9));
  curve.entries.reserve(static_cast<std::size_t>(count) + 1);
  for (long i = 0; i <= count; ++i) {
    const double x = x_min + static_cast<double>(i) * step;
    const double density_x = (1.0 - m.f0) * marginal_impl(m, model, x);
    // every mixture component is even in y, so the conditional mean is 0
    curve.entries.push_back({x, density_x, 0.0, condvar_impl(m, model, x)});
  }
  return curve;
}

std::pair<double, double> default_x_range(const GaussianModel& model) {
  const double spread =
      4.0 * std::sqrt(2.0 * static_cast<double>(model.n) * model.alpha);
  return {-spread, static_cast<double>(model.n) + spread};
}

}  // namespace kplume
