#include "kplume/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "logspace.hpp"

namespace kplume {

StepDistribution StepDistribution::from_atoms(std::vector<StepAtom> atoms) {
  if (atoms.empty())
    throw std::invalid_argument("step support must be non-empty");
  std::sort(atoms.begin(), atoms.end(), [](const StepAtom& l, const StepAtom& r) {
    return std::pair{l.dx, l.dy} < std::pair{r.dx, r.dy};
  });
  std::vector<StepAtom> merged;
  for (const StepAtom& atom : atoms) {
    if (atom.p < 0.0)
      throw std::invalid_argument("step probabilities must be nonnegative");
    if (!merged.empty() && merged.back().dx == atom.dx &&
        merged.back().dy == atom.dy) {
      merged.back().p += atom.p;
    } else {
      merged.push_back(atom);
    }
  }
  detail::KahanSum total;
  for (const StepAtom& atom : merged) total.add(atom.p);
  if (std::abs(total.value() - 1.0) > 1e-12)
    throw std::invalid_argument("step probabilities must sum to 1");
  // zero-probability atoms carry no information
  std::erase_if(merged, [](const StepAtom& atom) { return atom.p == 0.0; });
  if (merged.empty())
    throw std::invalid_argument("step support must be non-empty");
  return {std::move(merged)};
}

StepDistribution StepDistribution::simple_rw(double alpha, double beta) {
  return from_atoms({{2, 0, alpha}, {0, 0, alpha}, {1, 1, beta}, {1, -1, beta}});
}

StepDistribution StepDistribution::forty_five(double alpha, double beta) {
  return from_atoms({{2, 1, alpha}, {2, -1, alpha}, {0, 1, beta}, {0, -1, beta}});
}

StepDistribution StepDistribution::nearest_neighbor(double xi) {
  const double straight = 0.5 - 2.0 * xi;
  return from_atoms({{1, 1, xi},
                     {1, -1, xi},
                     {-1, 1, xi},
                     {-1, -1, xi},
                     {1, 0, straight},
                     {-1, 0, straight}});
}

StepDistribution StepDistribution::planar_asymmetric(double right, double left,
                                                     double up, double down) {
  return from_atoms({{1, 0, right}, {-1, 0, left}, {0, 1, up}, {0, -1, down}});
}

StepDistribution StepDistribution::point_mass(int dx, int dy) {
  return from_atoms({{dx, dy, 1.0}});
}

ConvolutionTable convolve_powers(const StepDistribution& step, int n,
                                 std::size_t point_budget) {
  if (n < 0) throw std::invalid_argument("convolve_powers requires n >= 0");
  ConvolutionTable table;
  table.layers.reserve(static_cast<std::size_t>(n) + 1);
  table.layers.push_back({{Point{0, 0}, 1.0}});
  std::size_t total_points = 1;
  for (int k = 1; k <= n; ++k) {
    SparseGrid next;
    for (const auto& [pt, p] : table.layers.back()) {
      for (const StepAtom& atom : step.support)
        next[Point{pt.x + atom.dx, pt.y + atom.dy}] += p * atom.p;
    }
    total_points += next.size();
    if (total_points > point_budget)
      throw SupportOverflow("convolution support exceeds the point budget (" +
                            std::to_string(point_budget) + ") at layer " +
                            std::to_string(k));
    table.layers.push_back(std::move(next));
  }
  return table;
}

LatticePmf mixture_pmf(const ConvolutionTable& table,
                       const OccupationPmf& occupation) {
  if (table.layers.size() < occupation.probs.size())
    throw std::invalid_argument(
        "convolution table is shallower than the occupation pmf");
  LatticePmf out;
  out.n = occupation.n;
  for (std::size_t k = 0; k < occupation.probs.size(); ++k) {
    const double w = occupation.probs[k];
    if (w == 0.0) continue;
    for (const auto& [pt, p] : table.layers[k]) out.support[pt] += w * p;
  }
  return out;
}

CondVarCurve condvar_from_pmf(const LatticePmf& pmf, double mass_threshold) {
  CondVarCurve curve;
  auto it = pmf.support.begin();
  while (it != pmf.support.end()) {
    const int x = it->first.x;
    auto end = it;
    while (end != pmf.support.end() && end->first.x == x) ++end;

    detail::KahanSum mass, first;
    for (auto c = it; c != end; ++c) {
      mass.add(c->second);
      first.add(static_cast<double>(c->first.y) * c->second);
    }
    if (mass.value() >= mass_threshold) {
      const double mean = first.value() / mass.value();
      detail::KahanSum second;
      for (auto c = it; c != end; ++c) {
        const double d = static_cast<double>(c->first.y) - mean;
        second.add(d * d * c->second);
      }
      curve.entries.push_back({static_cast<double>(x), mass.value(), mean,
                               second.value() / mass.value()});
    }
    it = end;
  }
  return curve;
}

}  // namespace kplume
