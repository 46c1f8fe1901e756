#include <cmath>
#include <doctest.h>

#include "kplume/kinetics.hpp"
#include "kplume/reference.hpp"

using namespace kplume;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// tiny deterministic generator for parameter sweeps
struct Lcg {
  std::uint64_t s = 0x853c49e6748fea9bULL;
  double uniform() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(s >> 11) * 0x1.0p-53;
  }
};

}  // namespace

TEST_CASE("stationary distribution") {
  CHECK(stationary(KineticsParams(0.1, 0.9)).first == doctest::Approx(0.9));
  CHECK(stationary(KineticsParams(0.1, 0.9)).second == doctest::Approx(0.1));
  CHECK(stationary(KineticsParams(0.01, 0.01)).first == doctest::Approx(0.5));
  CHECK(stationary(KineticsParams(0.0, 0.5)).first == 1.0);
  CHECK(stationary(KineticsParams(0.0, 0.5)).second == 0.0);
  CHECK_THROWS_AS(KineticsParams(0.0, 0.0), DegenerateChain);
  CHECK_THROWS_AS(KineticsParams(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(KineticsParams(0.1, 1.5), std::invalid_argument);
}

TEST_CASE("initial distribution parsing") {
  CHECK(InitialDistribution::parse("stationary").kind ==
        InitialDistribution::Kind::Stationary);
  CHECK(InitialDistribution::parse("free").kind ==
        InitialDistribution::Kind::Free);
  CHECK(InitialDistribution::parse("adsorbed").kind ==
        InitialDistribution::Kind::Adsorbed);
  const InitialDistribution custom = InitialDistribution::parse("custom:0.3");
  CHECK(custom.kind == InitialDistribution::Kind::Custom);
  CHECK(custom.pf == doctest::Approx(0.3));
  CHECK_THROWS_AS(InitialDistribution::parse("custom:1.5"),
                  std::invalid_argument);
  CHECK_THROWS_AS(InitialDistribution::parse("custom:abc"),
                  std::invalid_argument);
  CHECK_THROWS_AS(InitialDistribution::parse("custom:0.3x"),
                  std::invalid_argument);
  CHECK_THROWS_AS(InitialDistribution::parse("nonsense"),
                  std::invalid_argument);

  const KineticsParams params(0.2, 0.6, InitialDistribution::custom(0.25));
  CHECK(params.initial().first == doctest::Approx(0.25));
  CHECK(params.initial().second == doctest::Approx(0.75));
}

TEST_CASE("occupation pmf small cases") {
  const KineticsParams half(0.5, 0.5);
  const OccupationPmf f1 = occupation_pmf(half, 1);
  CHECK(f1.probs.size() == 2);
  CHECK(f1.probs[0] == doctest::Approx(0.5));
  CHECK(f1.probs[1] == doctest::Approx(0.5));

  const OccupationPmf f3 = occupation_pmf(half, 3);
  CHECK(f3.probs[0] == doctest::Approx(0.125));
  CHECK(f3.probs[1] == doctest::Approx(0.375));
  CHECK(f3.probs[2] == doctest::Approx(0.375));
  CHECK(f3.probs[3] == doctest::Approx(0.125));
  CHECK(max_abs_diff(f3.probs, enumerate_occupation_pmf(half, 3)) <= 1e-15);

  const KineticsParams never_adsorbs(0.0, 0.3, InitialDistribution::free());
  const OccupationPmf f5 = occupation_pmf(never_adsorbs, 5);
  for (int k = 0; k < 5; ++k) CHECK(f5.probs[k] == 0.0);
  CHECK(f5.probs[5] == 1.0);

  CHECK_THROWS_AS(occupation_pmf(half, 0), std::invalid_argument);
}

TEST_CASE("occupation pmf deterministic alternation at a = b = 1") {
  const KineticsParams params(1.0, 1.0);  // stationary init = (1/2, 1/2)
  const OccupationPmf f4 = occupation_pmf(params, 4);
  CHECK(f4.probs[2] == doctest::Approx(1.0));  // FAFA and AFAF both give K = 2
  CHECK(f4.probs[0] == 0.0);
  CHECK(f4.probs[4] == 0.0);
}

TEST_CASE("occupation pmf boundary closed forms and normalization") {
  Lcg rng;
  for (int trial = 0; trial < 30; ++trial) {
    const double a = 0.02 + 0.96 * rng.uniform();
    const double b = 0.02 + 0.96 * rng.uniform();
    const KineticsParams params(a, b,
                                InitialDistribution::custom(rng.uniform()));
    const auto [pf, pa] = params.initial();
    const int n = 1 + static_cast<int>(rng.uniform() * 200);
    const OccupationPmf f = occupation_pmf(params, n);
    CHECK(std::abs(f.mass() - 1.0) <= 1e-12);
    CHECK(std::abs(f.probs[0] - pa * std::pow(1.0 - b, n - 1)) <=
          1e-12 * std::max(1.0, f.probs[0]));
    CHECK(std::abs(f.probs[n] - pf * std::pow(1.0 - a, n - 1)) <=
          1e-12 * std::max(1.0, f.probs[n]));
    for (double p : f.probs) CHECK(p >= 0.0);
  }
}

TEST_CASE("occupation pmf equals exhaustive path enumeration") {
  Lcg rng;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double a = rng.uniform();
    const double b = 0.05 + 0.9 * rng.uniform();
    const KineticsParams params(a, b, trial % 2 == 0
                                          ? InitialDistribution::stationary()
                                          : InitialDistribution::custom(0.7));
    const int n = 1 + static_cast<int>(rng.uniform() * 10);
    worst = std::max(worst, max_abs_diff(occupation_pmf(params, n).probs,
                                         enumerate_occupation_pmf(params, n)));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("binomial degeneration when a + b = 1 and stationary start") {
  const KineticsParams params(0.3, 0.7);
  const int n = 40;
  const auto [pf, pa] = params.initial();
  CHECK(pf == doctest::Approx(0.7));
  const OccupationPmf f = occupation_pmf(params, n);
  // iid chain: K_n ~ Binomial(n, pf); build the pmf by the ratio recurrence
  std::vector<double> binom(static_cast<std::size_t>(n) + 1);
  binom[0] = std::pow(pa, n);
  for (int k = 0; k < n; ++k)
    binom[k + 1] = binom[k] * (static_cast<double>(n - k) /
                               static_cast<double>(k + 1)) *
                   (pf / pa);
  CHECK(max_abs_diff(f.probs, binom) <= 1e-13);
}

TEST_CASE("occupation mean") {
  CHECK(occupation_mean(occupation_pmf(KineticsParams(0.5, 0.5), 1)) ==
        doctest::Approx(0.5));
  CHECK(occupation_mean(occupation_pmf(KineticsParams(0.5, 0.5), 3)) ==
        doctest::Approx(1.5));
  const KineticsParams free_forever(0.0, 0.3, InitialDistribution::free());
  CHECK(occupation_mean(occupation_pmf(free_forever, 5)) ==
        doctest::Approx(5.0));
}

TEST_CASE("mode counting") {
  ModeReport r = count_modes(std::vector<double>{0.25, 0.5, 0.25});
  CHECK(r.count == 1);
  CHECK(r.locations == std::vector<int>{1});

  r = count_modes(std::vector<double>{0.2, 0.4, 0.4, 0.2});  // plateau once
  CHECK(r.count == 1);
  CHECK(r.locations == std::vector<int>{1});

  r = count_modes(std::vector<double>{0.3, 0.2, 0.3});
  CHECK(r.count == 2);
  CHECK(r.locations == std::vector<int>{0, 2});

  r = count_modes(std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(r.count == 1);

  const KineticsParams sticky(0.01, 0.01);
  const ModeReport twin = count_modes(occupation_pmf(sticky, 50));
  CHECK(twin.count >= 2);
  CHECK(twin.locations.front() <= 2);   // boundary peak near k = 0
  CHECK(twin.locations.back() >= 48);   // boundary peak near k = 50

  const ModeReport single =
      count_modes(occupation_pmf(KineticsParams(0.1, 0.9), 50));
  CHECK(single.count == 1);
}
