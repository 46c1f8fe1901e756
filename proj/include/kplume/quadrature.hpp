#pragma once

#include <functional>

namespace kplume {

/// Adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b]. Bisects
/// until the local error estimate |K15 - G7| falls below rel_tol * |K15|
/// (plus a tiny absolute floor) or max_depth is reached. Used as a test
/// device: every integrand here is smooth.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-10,
                          int max_depth = 40);

}  // namespace kplume
