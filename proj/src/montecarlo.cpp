#include "kplume/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>
#include <vector>

#include "logspace.hpp"

namespace kplume {

namespace {

/// PCG32 (XSH-RR), one independent stream per particle: the stream selector
/// feeds the increment, so (seed, particle) pairs never share a sequence.
struct Pcg32 {
  std::uint64_t state;
  std::uint64_t inc;

  Pcg32(std::uint64_t seed, std::uint64_t stream)
      : state(0), inc((stream << 1u) | 1u) {
    next();
    state += seed;
    next();
  }

  std::uint32_t next() {
    const std::uint64_t old = state;
    state = old * 6364136223846793005ULL + inc;
    const auto xorshifted =
        static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  /// 53-bit uniform in [0, 1).
  double uniform() {
    const std::uint64_t hi = next();
    const std::uint64_t lo = next();
    return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
  }

  /// Box-Muller pair; the radial uniform is shifted into (0, 1].
  std::pair<double, double> normal_pair() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }
};

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("KPLUME_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

struct LatticeStep {
  std::vector<StepAtom> atoms;  // cumulative selection in stored order

  explicit LatticeStep(const StepDistribution& d) : atoms(d.support) {}

  Point draw(Pcg32& rng) const {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
      acc += atoms[i].p;
      if (u < acc) return {atoms[i].dx, atoms[i].dy};
    }
    return {atoms.back().dx, atoms.back().dy};
  }
};

struct BlockAccum {
  std::map<Point, std::int64_t> histogram;
  std::map<int, ColumnStats> columns;
};

void record(BlockAccum& acc, const Point& cell, int column, double y) {
  ++acc.histogram[cell];
  ColumnStats& c = acc.columns[column];
  ++c.count;
  const double y2 = y * y;
  c.sy += y;
  c.sy2 += y2;
  c.sy3 += y2 * y;
  c.sy4 += y2 * y2;
}

constexpr std::int64_t kBlockSize = 16384;

}  // namespace

double ColumnStats::mean() const {
  return count > 0 ? sy / static_cast<double>(count) : 0.0;
}

double ColumnStats::variance() const {
  if (count <= 0) return 0.0;
  const double c = static_cast<double>(count);
  const double m = sy / c;
  const double v = sy2 / c - m * m;
  return v > 0.0 ? v : 0.0;
}

double ColumnStats::fourth_central() const {
  if (count <= 0) return 0.0;
  const double c = static_cast<double>(count);
  const double m = sy / c;
  const double e2 = sy2 / c, e3 = sy3 / c, e4 = sy4 / c;
  const double m4 = e4 - 4.0 * m * e3 + 6.0 * m * m * e2 - 3.0 * m * m * m * m;
  return m4 > 0.0 ? m4 : 0.0;
}

double ColumnStats::variance_stderr() const {
  if (count <= 1) return 0.0;
  const double v = variance();
  const double spread = fourth_central() - v * v;
  return spread > 0.0 ? std::sqrt(spread / static_cast<double>(count)) : 0.0;
}

double EmpiricalSummary::bin_center(int index) const {
  return (static_cast<double>(index) + 0.5) * bin_width;
}

std::map<int, double> EmpiricalSummary::empirical_marginal() const {
  std::map<int, double> out;
  for (const auto& [x, stats] : columns)
    out[x] = static_cast<double>(stats.count) / static_cast<double>(particles);
  return out;
}

CondVarCurve EmpiricalSummary::condvar(std::int64_t min_count) const {
  CondVarCurve curve;
  for (const auto& [x, stats] : columns) {
    if (stats.count < min_count) continue;
    const double pos = lattice ? static_cast<double>(x) : bin_center(x);
    curve.entries.push_back(
        {pos, static_cast<double>(stats.count) / static_cast<double>(particles),
         stats.mean(), stats.variance()});
  }
  return curve;
}

EmpiricalSummary simulate(const SimulationConfig& config) {
  if (config.particles < 1)
    throw std::invalid_argument("particle count must be >= 1");
  if (config.n < 1) throw std::invalid_argument("time n must be >= 1");
  const bool gaussian =
      std::holds_alternative<GaussianDispersion>(config.model);
  if (gaussian && !(config.bin_width > 0.0))
    throw std::invalid_argument("gaussian binning needs bin_width > 0");

  const StepDistribution step_law = std::visit(
      [&](const auto& m) -> StepDistribution {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SimpleRW>)
          return StepDistribution::simple_rw(m.alpha, m.beta);
        else if constexpr (std::is_same_v<T, FortyFive>)
          return StepDistribution::forty_five(m.alpha, m.beta);
        else if constexpr (std::is_same_v<T, NearestNeighbor>)
          return StepDistribution::nearest_neighbor(m.xi);
        else
          return StepDistribution::point_mass(0, 0);  // unused placeholder
      },
      config.model);
  const LatticeStep lattice_step(step_law);
  double sx = 0.0, sy_scale = 0.0;
  if (gaussian) {
    const auto& g = std::get<GaussianDispersion>(config.model);
    if (!(g.alpha > 0.0) || !(g.beta > 0.0))
      throw std::invalid_argument("gaussian dispersion needs alpha, beta > 0");
    sx = std::sqrt(2.0 * g.alpha);
    sy_scale = std::sqrt(2.0 * g.beta);
  }

  const auto [pf, pa] = config.kinetics.initial();
  const double a = config.kinetics.a, b = config.kinetics.b;
  const double w = config.bin_width;

  const std::int64_t blocks =
      (config.particles + kBlockSize - 1) / kBlockSize;
  std::vector<BlockAccum> partial(static_cast<std::size_t>(blocks));
  std::atomic<std::int64_t> next_block{0};

  auto worker = [&] {
    for (;;) {
      const std::int64_t blk = next_block.fetch_add(1);
      if (blk >= blocks) return;
      BlockAccum& acc = partial[static_cast<std::size_t>(blk)];
      const std::int64_t lo = blk * kBlockSize;
      const std::int64_t hi = std::min(lo + kBlockSize, config.particles);
      for (std::int64_t i = lo; i < hi; ++i) {
        Pcg32 rng(config.seed, static_cast<std::uint64_t>(i));
        bool is_free = rng.uniform() < pf;
        if (gaussian) {
          double x = 0.0, y = 0.0;
          for (int s = 1; s <= config.n; ++s) {
            if (is_free) {
              const auto [zx, zy] = rng.normal_pair();
              x += 1.0 + sx * zx;
              y += sy_scale * zy;
            }
            if (s < config.n) {
              const double u = rng.uniform();
              is_free = is_free ? (u >= a) : (u < b);
            }
          }
          const int bx = static_cast<int>(std::floor(x / w));
          const int by = static_cast<int>(std::floor(y / w));
          record(acc, Point{bx, by}, bx, y);
        } else {
          int x = 0, y = 0;
          for (int s = 1; s <= config.n; ++s) {
            if (is_free) {
              const Point d = lattice_step.draw(rng);
              x += d.x;
              y += d.y;
            }
            if (s < config.n) {
              const double u = rng.uniform();
              is_free = is_free ? (u >= a) : (u < b);
            }
          }
          record(acc, Point{x, y}, x, static_cast<double>(y));
        }
      }
    }
  };

  const int threads =
      static_cast<int>(std::min<std::int64_t>(resolve_threads(config.threads),
                                              blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  // Merge in block order: the result is independent of the thread count.
  EmpiricalSummary summary;
  summary.particles = config.particles;
  summary.n = config.n;
  summary.lattice = !gaussian;
  summary.bin_width = gaussian ? w : 0.0;
  for (const BlockAccum& acc : partial) {
    for (const auto& [pt, c] : acc.histogram) summary.histogram[pt] += c;
    for (const auto& [x, stats] : acc.columns) {
      ColumnStats& dst = summary.columns[x];
      dst.count += stats.count;
      dst.sy += stats.sy;
      dst.sy2 += stats.sy2;
      dst.sy3 += stats.sy3;
      dst.sy4 += stats.sy4;
    }
  }
  return summary;
}

double total_variation(const EmpiricalSummary& empirical,
                       const LatticePmf& exact) {
  if (!empirical.lattice)
    throw std::invalid_argument(
        "total variation compares lattice histograms only");
  const double inv_n = 1.0 / static_cast<double>(empirical.particles);
  detail::KahanSum sum;
  for (const auto& [pt, p] : exact.support) {
    auto it = empirical.histogram.find(pt);
    const double phat =
        it == empirical.histogram.end()
            ? 0.0
            : static_cast<double>(it->second) * inv_n;
    sum.add(std::abs(phat - p));
  }
  for (const auto& [pt, c] : empirical.histogram) {
    if (exact.support.find(pt) == exact.support.end())
      sum.add(static_cast<double>(c) * inv_n);
  }
  return 0.5 * sum.value();
}

}  // namespace kplume
