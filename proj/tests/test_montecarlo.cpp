#include <cmath>
#include <doctest.h>

#include "kplume/lattice.hpp"
#include "kplume/montecarlo.hpp"

using namespace kplume;

namespace {

bool summaries_identical(const EmpiricalSummary& a, const EmpiricalSummary& b) {
  if (a.histogram != b.histogram) return false;
  if (a.columns.size() != b.columns.size()) return false;
  auto ia = a.columns.begin();
  auto ib = b.columns.begin();
  for (; ia != a.columns.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (ia->second.count != ib->second.count) return false;
    if (ia->second.sy != ib->second.sy) return false;
    if (ia->second.sy2 != ib->second.sy2) return false;
    if (ia->second.sy4 != ib->second.sy4) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("permanently adsorbed particles never move") {
  SimulationConfig config;
  config.model = SimpleRW{0.25, 0.25};
  config.kinetics = KineticsParams(0.5, 0.0, InitialDistribution::adsorbed());
  config.n = 10;
  config.particles = 1000;
  config.seed = 1;
  const EmpiricalSummary summary = simulate(config);
  REQUIRE(summary.histogram.size() == 1);
  CHECK(summary.histogram.at(Point{0, 0}) == 1000);
  CHECK(summary.columns.at(0).variance() == 0.0);
}

TEST_CASE("bitwise reproducibility across runs and thread counts") {
  SimulationConfig config;
  config.model = FortyFive{0.25, 0.25};
  config.kinetics = KineticsParams(0.2, 0.6);
  config.n = 10;
  config.particles = 50'000;
  config.seed = 7;

  const EmpiricalSummary base = simulate(config);
  CHECK(summaries_identical(base, simulate(config)));

  SimulationConfig serial = config;
  serial.threads = 1;
  CHECK(summaries_identical(base, simulate(serial)));

  SimulationConfig wide = config;
  wide.threads = 8;
  CHECK(summaries_identical(base, simulate(wide)));

  SimulationConfig other_seed = config;
  other_seed.seed = 8;
  CHECK(!summaries_identical(base, simulate(other_seed)));

  // the env var caps the worker count without changing results
  setenv("KPLUME_THREADS", "3", 1);
  CHECK(summaries_identical(base, simulate(config)));
  setenv("KPLUME_THREADS", "0", 1);  // 0 = auto
  CHECK(summaries_identical(base, simulate(config)));
  unsetenv("KPLUME_THREADS");
}

TEST_CASE("empirical cell frequency matches the exact pmf") {
  SimulationConfig config;
  config.model = SimpleRW{0.25, 0.25};
  config.kinetics = KineticsParams(0.5, 0.5);
  config.n = 2;
  config.particles = 200'000;
  config.seed = 99;
  const EmpiricalSummary summary = simulate(config);
  const double p = 1.0 / 64;
  const double phat =
      static_cast<double>(summary.histogram.at(Point{4, 0})) /
      static_cast<double>(config.particles);
  const double band =
      4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(config.particles));
  CHECK(std::abs(phat - p) <= band);
}

TEST_CASE("empirical conditional variance of the 45-degree model") {
  SimulationConfig config;
  config.model = FortyFive{0.25, 0.25};
  config.kinetics = KineticsParams(0.0, 0.5, InitialDistribution::free());
  config.n = 7;
  config.particles = 100'000;
  config.seed = 3;
  const EmpiricalSummary summary = simulate(config);
  int checked = 0;
  for (const auto& [x, stats] : summary.columns) {
    if (stats.count < 1000) continue;
    ++checked;
    CHECK(std::abs(stats.variance() - 7.0) <= 4.0 * stats.variance_stderr());
    CHECK(std::abs(stats.mean()) <=
          4.0 * std::sqrt(stats.variance() /
                          static_cast<double>(stats.count)));
  }
  CHECK(checked >= 5);
}

TEST_CASE("total variation distance") {
  SimulationConfig config;
  config.model = SimpleRW{0.25, 0.25};
  config.kinetics = KineticsParams(0.1, 0.9);
  config.n = 5;
  config.particles = 10;
  config.seed = 2;
  const EmpiricalSummary tiny = simulate(config);
  const LatticePmf exact = joint_pmf_simple(config.kinetics, 0.25, 0.25, 5);

  const double tv_tiny = total_variation(tiny, exact);
  CHECK(tv_tiny >= 0.0);
  CHECK(tv_tiny <= 1.0);

  // empirical histogram against itself
  LatticePmf self;
  self.n = 5;
  for (const auto& [pt, c] : tiny.histogram)
    self.support[pt] = static_cast<double>(c) / 10.0;
  CHECK(total_variation(tiny, self) <= 1e-12);

  // statistical consistency: more particles, smaller distance
  const LatticePmf exact20 = joint_pmf_simple(config.kinetics, 0.25, 0.25, 20);
  SimulationConfig small = config;
  small.n = 20;
  small.particles = 10'000;
  small.seed = 11;
  SimulationConfig big = small;
  big.particles = 400'000;
  big.seed = 12;
  const double tv_small = total_variation(simulate(small), exact20);
  const double tv_big = total_variation(simulate(big), exact20);
  CHECK(tv_big < tv_small);
}

TEST_CASE("gaussian binning") {
  SimulationConfig config;
  config.model = GaussianDispersion{0.25, 0.25};
  config.kinetics = KineticsParams(0.1, 0.5);
  config.n = 4;
  config.particles = 20'000;
  config.seed = 5;
  config.bin_width = 0.25;
  const EmpiricalSummary summary = simulate(config);
  CHECK(!summary.lattice);
  CHECK(summary.bin_center(0) == doctest::Approx(0.125));
  CHECK(summary.bin_center(-1) == doctest::Approx(-0.125));
  std::int64_t total = 0;
  for (const auto& [x, stats] : summary.columns) total += stats.count;
  CHECK(total == config.particles);
  std::int64_t hist_total = 0;
  for (const auto& [pt, c] : summary.histogram) hist_total += c;
  CHECK(hist_total == config.particles);

  const LatticePmf dummy;
  CHECK_THROWS_AS(total_variation(summary, dummy), std::invalid_argument);

  SimulationConfig bad = config;
  bad.bin_width = 0.0;
  CHECK_THROWS_AS(simulate(bad), std::invalid_argument);
  bad = config;
  bad.particles = 0;
  CHECK_THROWS_AS(simulate(bad), std::invalid_argument);
}

TEST_CASE("empirical summary accessors") {
  SimulationConfig config;
  config.model = NearestNeighbor{0.2};
  config.kinetics = KineticsParams(0.2, 0.6);
  config.n = 6;
  config.particles = 5000;
  config.seed = 17;
  const EmpiricalSummary summary = simulate(config);
  double marginal_mass = 0.0;
  for (const auto& [x, p] : summary.empirical_marginal()) marginal_mass += p;
  CHECK(marginal_mass == doctest::Approx(1.0));
  const CondVarCurve curve = summary.condvar(100);
  for (const CondVarEntry& e : curve.entries)
    CHECK(e.marginal * static_cast<double>(config.particles) >= 100.0);
}
