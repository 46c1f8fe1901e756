#include "kplume/quadrature.hpp"

#include <array>
#include <cmath>

namespace kplume {

namespace {

// (G7, K15) pair on [-1, 1]; the Gauss nodes are the odd-index Kronrod
// nodes. Standard published abscissae/weights.
constexpr std::array<double, 8> kKronrodNodes = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
constexpr std::array<double, 4> kGaussWeights = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Panel {
  double integral;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double off = half * kKronrodNodes[i];
    const double fsum = f(center - off) + f(center + off);
    kronrod += kKronrodWeights[i] * fsum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

double refine(const std::function<double(double)>& f, double a, double b,
              const Panel& panel, double rel_tol, int depth) {
  if (depth <= 0 ||
      panel.error <= rel_tol * std::abs(panel.integral) + 1e-300)
    return panel.integral;
  const double mid = 0.5 * (a + b);
  const Panel left = gk15(f, a, mid);
  const Panel right = gk15(f, mid, b);
  return refine(f, a, mid, left, rel_tol, depth - 1) +
         refine(f, mid, b, right, rel_tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, int max_depth) {
  return refine(f, a, b, gk15(f, a, b), rel_tol, max_depth);
}

}  // namespace kplume
