#include <cmath>
#include <doctest.h>

#include "kplume/convolution.hpp"
#include "kplume/lattice.hpp"

using namespace kplume;

TEST_CASE("step distribution construction") {
  const StepDistribution merged = StepDistribution::from_atoms(
      {{1, 0, 0.3}, {1, 0, 0.2}, {0, 1, 0.5}});
  CHECK(merged.support.size() == 2);
  CHECK(merged.support[1].dx == 1);
  CHECK(merged.support[1].p == doctest::Approx(0.5));

  CHECK_THROWS_AS(StepDistribution::from_atoms({{1, 0, 0.5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(StepDistribution::from_atoms({{1, 0, 1.5}, {0, 1, -0.5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(StepDistribution::from_atoms({}), std::invalid_argument);
}

TEST_CASE("iterated convolution basics") {
  const ConvolutionTable deterministic =
      convolve_powers(StepDistribution::point_mass(1, 0), 3);
  CHECK(deterministic.layers.size() == 4);
  CHECK(deterministic.layers[3].size() == 1);
  CHECK(deterministic.layers[3].at(Point{3, 0}) == doctest::Approx(1.0));

  const ConvolutionTable empty_sum =
      convolve_powers(StepDistribution::simple_rw(0.25, 0.25), 0);
  CHECK(empty_sum.layers.size() == 1);
  CHECK(empty_sum.layers[0].at(Point{0, 0}) == 1.0);

  const ConvolutionTable two =
      convolve_powers(StepDistribution::simple_rw(0.25, 0.25), 2);
  CHECK(two.layers[2].at(Point{4, 0}) == doctest::Approx(1.0 / 16));

  // brute force over the 16 ordered step pairs
  const StepDistribution step = StepDistribution::simple_rw(0.25, 0.25);
  SparseGrid brute;
  for (const StepAtom& s1 : step.support)
    for (const StepAtom& s2 : step.support)
      brute[Point{s1.dx + s2.dx, s1.dy + s2.dy}] += s1.p * s2.p;
  for (const auto& [pt, p] : brute)
    CHECK(two.layers[2].at(pt) == doctest::Approx(p).epsilon(1e-14));

  CHECK_THROWS_AS(convolve_powers(step, -1), std::invalid_argument);
  CHECK_THROWS_AS(convolve_powers(step, 50, 10), SupportOverflow);
}

TEST_CASE("layer mass conservation and support bound") {
  const StepDistribution step = StepDistribution::nearest_neighbor(0.2);
  const ConvolutionTable table = convolve_powers(step, 20);
  for (int k = 0; k <= 20; ++k) {
    double mass = 0.0;
    for (const auto& [pt, p] : table.layers[k]) {
      mass += p;
      CHECK(std::abs(pt.x) <= k);  // k-fold Minkowski sum of unit-x steps
      CHECK(std::abs(pt.y) <= k);
    }
    CHECK(std::abs(mass - 1.0) <= 1e-12);
  }
}

TEST_CASE("occupation mixture") {
  const StepDistribution step = StepDistribution::simple_rw(0.25, 0.25);
  const ConvolutionTable table = convolve_powers(step, 3);

  OccupationPmf at_top{3, {0.0, 0.0, 0.0, 1.0}};
  const LatticePmf top = mixture_pmf(table, at_top);
  CHECK(max_abs_diff(top, LatticePmf{3, table.layers[3]}) == 0.0);

  const KineticsParams params(0.3, 0.6);
  const auto [pf, pa] = params.initial();
  const LatticePmf one = mixture_pmf(table, occupation_pmf(params, 1));
  CHECK(one.at(0, 0) == doctest::Approx(pa + pf * 0.25));  // idle + (0,0) step
  CHECK(one.at(2, 0) == doctest::Approx(pf * 0.25));
  CHECK(one.at(1, 1) == doctest::Approx(pf * 0.25));
  CHECK(one.at(1, -1) == doctest::Approx(pf * 0.25));

  OccupationPmf too_deep{5, {0.2, 0.2, 0.2, 0.2, 0.1, 0.1}};
  CHECK_THROWS_AS(mixture_pmf(table, too_deep), std::invalid_argument);
}

TEST_CASE("column conditional moments") {
  LatticePmf split;
  split.n = 1;
  split.support[Point{0, 1}] = 0.5;
  split.support[Point{0, -1}] = 0.5;
  CondVarCurve curve = condvar_from_pmf(split);
  REQUIRE(curve.entries.size() == 1);
  CHECK(curve.entries[0].cond_var == doctest::Approx(1.0));
  CHECK(curve.entries[0].cond_mean == doctest::Approx(0.0));

  LatticePmf point;
  point.n = 1;
  point.support[Point{0, 0}] = 1.0;
  curve = condvar_from_pmf(point);
  REQUIRE(curve.entries.size() == 1);
  CHECK(curve.entries[0].cond_var == 0.0);

  LatticePmf faint;
  faint.n = 1;
  faint.support[Point{0, 0}] = 1.0;
  faint.support[Point{1, 0}] = 1e-310;  // below the omission threshold
  curve = condvar_from_pmf(faint);
  CHECK(curve.entries.size() == 1);
  CHECK(curve.at_x(1.0) == nullptr);
}

TEST_CASE("engine matches the closed-form conditional variance") {
  const KineticsParams params(0.2, 0.7);
  const CondVarCurve closed = condvar_simple(params, 0.25, 0.25, 6);
  const CondVarCurve engine =
      condvar_from_pmf(joint_pmf_simple(params, 0.25, 0.25, 6));
  REQUIRE(closed.entries.size() == engine.entries.size());
  for (std::size_t i = 0; i < closed.entries.size(); ++i) {
    CHECK(closed.entries[i].x == engine.entries[i].x);
    CHECK(std::abs(closed.entries[i].cond_var - engine.entries[i].cond_var) <=
          1e-12);
    CHECK(std::abs(closed.entries[i].marginal - engine.entries[i].marginal) <=
          1e-14);
  }
}
