#include "kplume/grid.hpp"

#include <cmath>

#include "logspace.hpp"

namespace kplume {

double LatticePmf::at(int x, int y) const {
  auto it = support.find(Point{x, y});
  return it == support.end() ? 0.0 : it->second;
}

double LatticePmf::mass() const {
  detail::KahanSum s;
  for (const auto& [pt, p] : support) s.add(p);
  return s.value();
}

std::map<int, double> LatticePmf::marginal_x() const {
  std::map<int, double> out;
  auto it = support.begin();
  while (it != support.end()) {
    const int x = it->first.x;
    detail::KahanSum s;
    while (it != support.end() && it->first.x == x) {
      s.add(it->second);
      ++it;
    }
    out[x] = s.value();
  }
  return out;
}

double max_abs_diff(const LatticePmf& lhs, const LatticePmf& rhs) {
  double worst = 0.0;
  for (const auto& [pt, p] : lhs.support)
    worst = std::max(worst, std::abs(p - rhs.at(pt.x, pt.y)));
  for (const auto& [pt, p] : rhs.support)
    worst = std::max(worst, std::abs(p - lhs.at(pt.x, pt.y)));
  return worst;
}

const CondVarEntry* CondVarCurve::at_x(double x) const {
  for (const CondVarEntry& e : entries)
    if (e.x == x) return &e;
  return nullptr;
}

}  // namespace kplume
