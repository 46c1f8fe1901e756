#include <cmath>
#include <cstdint>
#include <doctest.h>

#include "kplume/lattice.hpp"
#include "kplume/reference.hpp"

using namespace kplume;

TEST_CASE("simple model: parity, exact cells, normalization") {
  const KineticsParams half(0.5, 0.5);
  const LatticePmf p3 = joint_pmf_simple(half, 0.25, 0.25, 3);
  CHECK(p3.at(2, 1) == 0.0);  // x and y of different parity are unreachable
  CHECK(p3.support.find(Point{2, 1}) == p3.support.end());

  const LatticePmf p2 = joint_pmf_simple(half, 0.25, 0.25, 2);
  CHECK(p2.at(4, 0) == doctest::Approx(1.0 / 64).epsilon(1e-14));
  CHECK(max_abs_diff(p2, enumerate_kinetic_pmf(
                             half, StepDistribution::simple_rw(0.25, 0.25), 2)) <=
        1e-15);

  const KineticsParams always_free(0.0, 0.3, InitialDistribution::free());
  CHECK(std::abs(joint_pmf_simple(always_free, 0.25, 0.25, 50).mass() - 1.0) <=
        1e-10);
  CHECK(std::abs(joint_pmf_simple(KineticsParams(0.2, 0.4), 0.1, 0.4, 100)
                     .mass() -
                 1.0) <= 1e-10);

  // support bounds
  for (const auto& [pt, p] : p3.support) {
    CHECK(pt.x >= 0);
    CHECK(pt.x <= 6);
    CHECK(std::abs(pt.y) <= 3);
    CHECK(((pt.x - pt.y) & 1) == 0);
  }

  CHECK_THROWS_AS(joint_pmf_simple(half, 0.3, 0.3, 5), InvalidDispersion);
  CHECK_THROWS_AS(condvar_simple(half, 0.1, 0.3, 5), InvalidDispersion);
  CHECK_THROWS_AS(joint_pmf_simple(half, 0.25, 0.25, 0), std::invalid_argument);
}

TEST_CASE("simple model conditional variance pinned columns") {
  const KineticsParams params(0.3, 0.4, InitialDistribution::free());
  const CondVarCurve curve = condvar_simple(params, 0.25, 0.25, 6);
  REQUIRE(curve.at_x(0.0) != nullptr);
  CHECK(curve.at_x(0.0)->cond_var == 0.0);   // x = 0 forbids lateral steps
  REQUIRE(curve.at_x(12.0) != nullptr);
  CHECK(curve.at_x(12.0)->cond_var == 0.0);  // x = 2n forces all-horizontal

  const KineticsParams custom(0.5, 0.5, InitialDistribution::custom(0.7));
  const CondVarCurve one = condvar_simple(custom, 0.25, 0.25, 1);
  REQUIRE(one.at_x(1.0) != nullptr);
  CHECK(one.at_x(1.0)->cond_var == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("45-degree model: cells, parity, conditional variance") {
  const KineticsParams always_free(0.0, 0.5, InitialDistribution::free());
  const LatticePmf p2 = joint_pmf_45(always_free, 0.25, 0.25, 2);
  CHECK(p2.at(4, 0) == doctest::Approx(1.0 / 8).epsilon(1e-14));
  for (int y = -2; y <= 2; ++y) CHECK(p2.at(3, y) == 0.0);  // odd x unreachable
  CHECK(std::abs(p2.mass() - 1.0) <= 1e-12);
  CHECK(max_abs_diff(
            p2, enumerate_kinetic_pmf(
                    always_free, StepDistribution::forty_five(0.25, 0.25), 2)) <=
        1e-15);

  // every free step contributes an independent +-1 laterally, so the
  // conditional variance is the occupation count n on every column
  const CondVarCurve seven = condvar_45(always_free, 0.1, 0.4, 7);
  REQUIRE(!seven.entries.empty());
  for (const CondVarEntry& e : seven.entries)
    CHECK(e.cond_var == doctest::Approx(7.0).epsilon(1e-12));

  const KineticsParams half(0.5, 0.5);
  const CondVarCurve mix = condvar_45(half, 0.25, 0.25, 2);
  REQUIRE(mix.at_x(0.0) != nullptr);
  CHECK(mix.at_x(0.0)->cond_var == doctest::Approx(2.0 / 3).epsilon(1e-14));
  const CondVarCurve brute = condvar_from_pmf(enumerate_kinetic_pmf(
      half, StepDistribution::forty_five(0.25, 0.25), 2));
  CHECK(mix.at_x(0.0)->cond_var ==
        doctest::Approx(brute.at_x(0.0)->cond_var).epsilon(1e-13));
}

TEST_CASE("nearest-neighbor model is the mean-zero diagonal walk") {
  const KineticsParams always_free(0.0, 0.5, InitialDistribution::free());
  const LatticePmf one = joint_pmf_nn(always_free, 0.2, 1);
  CHECK(one.at(1, 1) == doctest::Approx(0.2));
  CHECK(one.at(1, 0) == doctest::Approx(0.1));
  CHECK(one.at(-1, -1) == doctest::Approx(0.2));

  const KineticsParams sticky(0.01, 0.01);
  const LatticePmf plume = joint_pmf_nn(sticky, 0.2, 25);
  CHECK(std::abs(plume.mass() - 1.0) <= 1e-10);

  // lateral spread is non-monotone: parity of x couples to the free-step count
  const CondVarCurve curve = condvar_nn(sticky, 0.2, 25);
  double peak = -1.0, dip = 0.0;
  for (const CondVarEntry& e : curve.entries) {
    peak = std::max(peak, e.cond_var);
    dip = std::max(dip, peak - e.cond_var);
  }
  CHECK(dip > 1e-6);

  CHECK_THROWS_AS(joint_pmf_nn(sticky, 0.25, 5), InvalidXi);
  CHECK_THROWS_AS(joint_pmf_nn(sticky, 0.0, 5), InvalidXi);
  CHECK_THROWS_AS(condvar_nn(sticky, 0.3, 5), InvalidXi);
}

TEST_CASE("conditional means vanish and marginals are normalized") {
  const std::pair<double, double> kinetics[] = {{0.1, 0.9}, {0.01, 0.01}};
  for (const auto& [a, b] : kinetics) {
    const KineticsParams params(a, b);
    const CondVarCurve curves[] = {condvar_simple(params, 0.25, 0.25, 20),
                                   condvar_45(params, 0.25, 0.25, 20),
                                   condvar_nn(params, 0.2, 20)};
    for (const CondVarCurve& curve : curves) {
      double mass = 0.0;
      for (const CondVarEntry& e : curve.entries) {
        CHECK(std::abs(e.cond_mean) <= 1e-12);
        mass += e.marginal;
      }
      CHECK(std::abs(mass - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("law of total variance at small n") {
  const KineticsParams params(0.3, 0.6);
  const int n = 8;
  const double mean_k = occupation_mean(occupation_pmf(params, n));
  auto second_moment = [](const LatticePmf& pmf) {
    double s = 0.0;
    for (const auto& [pt, p] : pmf.support)
      s += static_cast<double>(pt.y) * pt.y * p;
    return s;
  };
  CHECK(std::abs(second_moment(joint_pmf_simple(params, 0.2, 0.3, n)) -
                 2.0 * 0.3 * mean_k) <= 1e-12);
  CHECK(std::abs(second_moment(joint_pmf_45(params, 0.2, 0.3, n)) - mean_k) <=
        1e-12);
  CHECK(std::abs(second_moment(joint_pmf_nn(params, 0.15, n)) -
                 4.0 * 0.15 * mean_k) <= 1e-12);
}

TEST_CASE("conditional variance symmetry when a + b = 1") {
  const KineticsParams params(0.2, 0.8);
  const int n = 12;
  const CondVarCurve curve = condvar_simple(params, 0.25, 0.25, n);
  for (int x = 0; x <= n; ++x) {
    const CondVarEntry* hi = curve.at_x(static_cast<double>(n + x));
    const CondVarEntry* lo = curve.at_x(static_cast<double>(n - x));
    REQUIRE(hi != nullptr);
    REQUIRE(lo != nullptr);
    CHECK(std::abs(hi->cond_var - lo->cond_var) <= 1e-12);
  }
}

TEST_CASE("planar walk: exact cells and the two evaluation routes") {
  const AsymmetricWalkParams uniform{0.25, 0.25, 0.25, 0.25};
  const LatticePmf one = asym_joint_pmf(uniform, 1);
  CHECK(one.at(1, 0) == doctest::Approx(0.25));
  CHECK(one.at(-1, 0) == doctest::Approx(0.25));
  CHECK(one.at(0, 1) == doctest::Approx(0.25));
  CHECK(one.at(0, -1) == doctest::Approx(0.25));

  const AsymmetricWalkParams skew{0.4, 0.1, 0.3, 0.2};
  const LatticePmf two = asym_joint_pmf(skew, 2);
  CHECK(two.at(0, 0) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(asym_joint_pmf(skew, 3).at(0, 0) == 0.0);  // y = n - x (mod 2) fails

  const LatticePmf closed = asym_joint_pmf(skew, 6, AsymMethod::ClosedForm);
  const LatticePmf engine = asym_joint_pmf(skew, 6, AsymMethod::Convolution);
  CHECK(max_abs_diff(closed, engine) <= 1e-14);
  CHECK(max_abs_diff(closed, enumerate_planar_walk_pmf(skew, 6)) <= 1e-14);

  const std::map<int, double> closed_marginal = asym_marginal_x(skew, 6);
  const std::map<int, double> column_sums = closed.marginal_x();
  for (const auto& [x, p] : closed_marginal)
    CHECK(std::abs(p - column_sums.at(x)) <= 1e-14);

  CHECK_THROWS_AS(asym_joint_pmf({0.5, 0.5, 0.5, 0.5}, 3),
                  std::invalid_argument);
}

TEST_CASE("planar walk mirror symmetry") {
  CHECK(check_conditional_symmetry({0.3, 0.3, 0.25, 0.15}, 9) <= 1e-15);
  CHECK(check_conditional_symmetry({0.4, 0.1, 0.3, 0.2}, 12) <= 1e-12);
  CHECK(check_conditional_symmetry({0.5, 0.5, 0.0, 0.0}, 5) == 0.0);
  CHECK(check_conditional_symmetry({0.4, 0.1, 0.3, 0.2}, 12,
                                   AsymMethod::Convolution) <= 1e-12);
}

TEST_CASE("binomial convolution identity in exact integers") {
  // C(x, j) C(k-x, m-j) summed over j equals C(k, m)
  std::uint64_t pascal[21][21] = {};
  for (int m = 0; m <= 20; ++m) {
    pascal[m][0] = 1;
    for (int l = 1; l <= m; ++l)
      pascal[m][l] = pascal[m - 1][l - 1] + (l <= m - 1 ? pascal[m - 1][l] : 0);
  }
  std::uint64_t state = 12345;
  auto next = [&state](int bound) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<int>((state >> 33) % static_cast<std::uint64_t>(bound));
  };
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + next(20);
    const int x = next(k + 1);
    const int y = -k + 2 * next(k + 1);  // same parity as k
    const int m = (k + y) / 2;
    std::uint64_t sum = 0;
    for (int j = 0; j <= x; ++j) {
      if (m - j < 0 || m - j > k - x) continue;
      sum += pascal[x][j] * pascal[k - x][m - j];
    }
    CHECK(sum == pascal[k][m]);
  }
}
