#pragma once

#include <compare>
#include <map>
#include <vector>

namespace kplume {

struct Point {
  int x = 0;
  int y = 0;
  auto operator<=>(const Point&) const = default;
};

/// Sparse pmf over integer points, keyed in (x, y) order so every iteration
/// (and therefore every accumulation) has a fixed, reproducible order.
using SparseGrid = std::map<Point, double>;

/// A finite-support probability mass function on Z^2 at a fixed time n.
struct LatticePmf {
  int n = 0;
  SparseGrid support;

  /// Probability of a cell; 0 for absent cells.
  double at(int x, int y) const;

  /// Total mass (compensated summation).
  double mass() const;

  /// Column sums P(S_X = x), keyed by x.
  std::map<int, double> marginal_x() const;
};

/// Max absolute cell difference over the union of the two supports.
double max_abs_diff(const LatticePmf& lhs, const LatticePmf& rhs);

/// One column of a conditional-variance curve: the marginal mass (or density)
/// at x, and the conditional mean/variance of the lateral coordinate there.
struct CondVarEntry {
  double x = 0.0;
  double marginal = 0.0;
  double cond_mean = 0.0;
  double cond_var = 0.0;
};

struct CondVarCurve {
  std::vector<CondVarEntry> entries;  // ascending x; columns without mass omitted

  /// Entry with exactly this x, or nullptr.
  const CondVarEntry* at_x(double x) const;
};

}  // namespace kplume
