#include "kplume/reference.hpp"

#include <functional>
#include <stdexcept>

namespace kplume {

namespace {

void check_enumeration_size(int n, int limit, const char* what) {
  if (n < 1 || n > limit)
    throw std::invalid_argument(std::string(what) +
                                " enumerates paths exhaustively; n must be in "
                                "[1, " +
                                std::to_string(limit) + "]");
}

}  // namespace

std::vector<double> enumerate_occupation_pmf(const KineticsParams& params,
                                             int n) {
  check_enumeration_size(n, 20, "enumerate_occupation_pmf");
  const auto [pf, pa] = params.initial();
  const double a = params.a, b = params.b;
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);

  // walk(step, state) extends a prefix ending in `state` at time `step`
  std::function<void(int, bool, int, double)> walk =
      [&](int step, bool is_free, int free_count, double prob) {
        if (prob == 0.0) return;
        if (step == n) {
          out[static_cast<std::size_t>(free_count)] += prob;
          return;
        }
        if (is_free) {
          walk(step + 1, true, free_count + 1, prob * (1.0 - a));
          walk(step + 1, false, free_count, prob * a);
        } else {
          walk(step + 1, true, free_count + 1, prob * b);
          walk(step + 1, false, free_count, prob * (1.0 - b));
        }
      };
  walk(1, true, 1, pf);
  walk(1, false, 0, pa);
  return out;
}

LatticePmf enumerate_kinetic_pmf(const KineticsParams& params,
                                 const StepDistribution& step, int n) {
  check_enumeration_size(n, 8, "enumerate_kinetic_pmf");
  const auto [pf, pa] = params.initial();
  const double a = params.a, b = params.b;
  LatticePmf out;
  out.n = n;

  std::function<void(int, bool, int, int, double)> walk =
      [&](int step_idx, bool is_free, int x, int y, double prob) {
        if (prob == 0.0) return;
        auto advance = [&](int nx, int ny, double p) {
          if (step_idx == n) {
            out.support[Point{nx, ny}] += p;
            return;
          }
          if (is_free) {
            walk(step_idx + 1, true, nx, ny, p * (1.0 - a));
            walk(step_idx + 1, false, nx, ny, p * a);
          } else {
            walk(step_idx + 1, true, nx, ny, p * b);
            walk(step_idx + 1, false, nx, ny, p * (1.0 - b));
          }
        };
        if (is_free) {
          for (const StepAtom& atom : step.support)
            advance(x + atom.dx, y + atom.dy, prob * atom.p);
        } else {
          advance(x, y, prob);
        }
      };
  walk(1, true, 0, 0, pf);
  walk(1, false, 0, 0, pa);
  return out;
}

LatticePmf enumerate_planar_walk_pmf(const AsymmetricWalkParams& params,
                                     int n) {
  check_enumeration_size(n, 10, "enumerate_planar_walk_pmf");
  LatticePmf out;
  out.n = n;
  std::function<void(int, int, int, double)> walk = [&](int step, int x, int y,
                                                        double prob) {
    if (prob == 0.0) return;
    if (step == n) {
      out.support[Point{x, y}] += prob;
      return;
    }
    walk(step + 1, x + 1, y, prob * params.right);
    walk(step + 1, x - 1, y, prob * params.left);
    walk(step + 1, x, y + 1, prob * params.up);
    walk(step + 1, x, y - 1, prob * params.down);
  };
  walk(0, 0, 0, 1.0);
  return out;
}

}  // namespace kplume
