#include "kplume/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "kplume/cli.hpp"
#include "kplume/convolution.hpp"
#include "kplume/gaussian.hpp"
#include "kplume/kinetics.hpp"
#include "kplume/lattice.hpp"
#include "kplume/montecarlo.hpp"
#include "kplume/quadrature.hpp"
#include "kplume/reference.hpp"
#include "logspace.hpp"

namespace fs = std::filesystem;

namespace kplume {

namespace {

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

/// Deterministic generator for the randomized checks.
struct SplitMix64 {
  std::uint64_t s;
  explicit SplitMix64(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform() * (hi - lo + 1));
  }
};

const std::array<std::pair<double, double>, 3> kFigureAB = {
    {{0.1, 0.9}, {0.1, 0.1}, {0.01, 0.01}}};

InitialDistribution init_cycle(int i) {
  switch (i % 4) {
    case 0:
      return InitialDistribution::stationary();
    case 1:
      return InitialDistribution::free();
    case 2:
      return InitialDistribution::adsorbed();
    default:
      return InitialDistribution::custom(0.3);
  }
}

double curve_min_slack(const CondVarCurve& curve) {
  double slack = 0.0;
  for (std::size_t i = 1; i < curve.entries.size(); ++i)
    slack = std::min(slack,
                     curve.entries[i].cond_var - curve.entries[i - 1].cond_var);
  return slack;
}

/// Largest drop below the running maximum (positive when the curve dips).
double curve_max_dip(const CondVarCurve& curve) {
  double peak = -1.0, dip = 0.0;
  for (const CondVarEntry& e : curve.entries) {
    if (e.cond_var > peak) peak = e.cond_var;
    dip = std::max(dip, peak - e.cond_var);
  }
  return dip;
}

double lattice_second_moment_y(const LatticePmf& pmf) {
  detail::KahanSum s;
  for (const auto& [pt, p] : pmf.support)
    s.add(static_cast<double>(pt.y) * static_cast<double>(pt.y) * p);
  return s.value();
}

// ---------------------------------------------------------------------------
// checks (numbered in the order reported)
// ---------------------------------------------------------------------------

CheckResult check_occupation_oracle(const VerifyOptions&) {
  const double tol = 1e-13;
  const std::array<double, 3> grid = {0.1, 0.5, 0.9};
  double worst = 0.0;
  for (double a : grid)
    for (double b : grid)
      for (int i = 0; i < 3; ++i) {
        const KineticsParams params(a, b, init_cycle(i));
        for (int n = 1; n <= 10; ++n) {
          const OccupationPmf fast = occupation_pmf(params, n);
          const std::vector<double> slow = enumerate_occupation_pmf(params, n);
          for (int k = 0; k <= n; ++k)
            worst = std::max(worst, std::abs(fast.probs[k] - slow[k]));
        }
      }
  return {"occupation-oracle", worst <= tol,
          "recurrence vs 2^n path enumeration, (a,b) in {0.1,0.5,0.9}^2, all "
          "inits, n <= 10: max diff " +
              fmt3(worst) + " (tol " + fmt3(tol) + ")"};
}

CheckResult check_normalization(const VerifyOptions& opt) {
  const double lattice_tol = 1e-10;
  const double gauss_tol = 1e-6;
  double worst_lattice = 0.0;
  bool faulted = false;
  for (const auto& [a, b] : kFigureAB) {
    const KineticsParams params(a, b);
    LatticePmf simple = joint_pmf_simple(params, 0.25, 0.25, 50);
    if (opt.inject_fault && !faulted) {
      simple.support.begin()->second += 1e-6;  // checker self-test
      faulted = true;
    }
    worst_lattice = std::max(worst_lattice, std::abs(simple.mass() - 1.0));
    const LatticePmf ff = joint_pmf_45(params, 0.25, 0.25, 50);
    worst_lattice = std::max(worst_lattice, std::abs(ff.mass() - 1.0));
  }
  {
    const KineticsParams params(0.01, 0.01);
    const LatticePmf nn = joint_pmf_nn(params, 0.2, 25);
    worst_lattice = std::max(worst_lattice, std::abs(nn.mass() - 1.0));
  }

  // Gaussian: atom plus per-component quadrature over the +-8 sigma box.
  double worst_gauss = 0.0;
  for (const auto& [a, b] : kFigureAB) {
    const GaussianModel model{KineticsParams(a, b), 0.25, 0.25, 50};
    const OccupationPmf occ = occupation_pmf(model.params, model.n);
    double x_lo = 0.0, x_hi = 0.0, y_half = 0.0;
    for (int k = 1; k <= model.n; ++k) {
      const double sx = std::sqrt(2.0 * k * model.alpha);
      const double sy = std::sqrt(2.0 * k * model.beta);
      x_lo = std::min(x_lo, k - 8.0 * sx);
      x_hi = std::max(x_hi, k + 8.0 * sx);
      y_half = std::max(y_half, 8.0 * sy);
    }
    detail::KahanSum total;
    total.add(occ.probs[0]);
    for (int k = 1; k <= model.n; ++k) {
      if (occ.probs[k] == 0.0) continue;
      const double vx = 2.0 * k * model.alpha;
      const double vy = 2.0 * k * model.beta;
      const double ix = integrate_adaptive(
          [&](double x) {
            return std::exp(-(x - k) * (x - k) / (2.0 * vx)) /
                   std::sqrt(2.0 * std::numbers::pi * vx);
          },
          x_lo, x_hi, 1e-8);
      const double iy = integrate_adaptive(
          [&](double y) {
            return std::exp(-y * y / (2.0 * vy)) /
                   std::sqrt(2.0 * std::numbers::pi * vy);
          },
          -y_half, y_half, 1e-8);
      total.add(occ.probs[k] * ix * iy);
    }
    worst_gauss = std::max(worst_gauss, std::abs(total.value() - 1.0));
  }

  const bool pass = worst_lattice <= lattice_tol && worst_gauss <= gauss_tol;
  std::string detail =
      "lattice pmf mass error " + fmt3(worst_lattice) + " (tol " +
      fmt3(lattice_tol) + "), gaussian atom+quadrature error " +
      fmt3(worst_gauss) + " (tol " + fmt3(gauss_tol) + ")";
  if (opt.inject_fault) detail += " [fault injected]";
  return {"normalization", pass, detail};
}

CheckResult check_closed_vs_convolution(const VerifyOptions&) {
  const double tol = 1e-10;
  SplitMix64 rng(0xC0FFEEULL);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const double a = rng.uniform(0.05, 0.95);
    const double b = rng.uniform(0.05, 0.95);
    const double alpha = rng.uniform(0.05, 0.45);
    const double beta = 0.5 - alpha;
    const int n = rng.uniform_int(3, 30);
    const KineticsParams params(a, b, init_cycle(trial));
    const OccupationPmf occ = occupation_pmf(params, n);

    const LatticePmf closed_simple = joint_pmf_simple(params, alpha, beta, n);
    const LatticePmf engine_simple = mixture_pmf(
        convolve_powers(StepDistribution::simple_rw(alpha, beta), n), occ);
    worst = std::max(worst, max_abs_diff(closed_simple, engine_simple));

    const LatticePmf closed_ff = joint_pmf_45(params, alpha, beta, n);
    const LatticePmf engine_ff = mixture_pmf(
        convolve_powers(StepDistribution::forty_five(alpha, beta), n), occ);
    worst = std::max(worst, max_abs_diff(closed_ff, engine_ff));
  }
  return {"closed-vs-convolution", worst <= tol,
          "simple + 45-degree closed forms vs convolution engine, 5 random "
          "parameter sets, n <= 30: max diff " +
              fmt3(worst) + " (tol " + fmt3(tol) + ")"};
}

CheckResult check_symmetry(const VerifyOptions& opt) {
  const double tol = 1e-9;
  const double a = opt.a.value_or(0.1);
  const double b = opt.b.value_or(0.9);
  const int n = 50;
  const KineticsParams params(a, b);
  const CondVarCurve curve = condvar_simple(params, 0.25, 0.25, n);
  double worst = 0.0;
  int missing = 0;
  for (int x = 0; x <= n; ++x) {
    const CondVarEntry* hi = curve.at_x(static_cast<double>(n + x));
    const CondVarEntry* lo = curve.at_x(static_cast<double>(n - x));
    if (hi == nullptr || lo == nullptr) {
      ++missing;
      continue;
    }
    worst = std::max(worst, std::abs(hi->cond_var - lo->cond_var));
  }
  const bool pass = worst <= tol && missing == 0;
  return {"symmetry", pass,
          "Var(n+x) vs Var(n-x), a=" + fmt3(a) + " b=" + fmt3(b) +
              " n=50: max diff " + fmt3(worst) + " (tol " + fmt3(tol) + ")" +
              (missing ? ", " + std::to_string(missing) + " columns missing"
                       : "")};
}

CheckResult check_planar_symmetry(const VerifyOptions&) {
  const double tol = 1e-12;
  SplitMix64 rng(0xBEEFULL);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    double w[4];
    double total = 0.0;
    for (double& v : w) {
      v = -std::log(1.0 - rng.uniform());
      total += v;
    }
    const AsymmetricWalkParams params{w[0] / total, w[1] / total, w[2] / total,
                                      w[3] / total};
    const int n = rng.uniform_int(1, 15);
    worst = std::max(
        worst, check_conditional_symmetry(params, n, AsymMethod::ClosedForm));
    worst = std::max(
        worst, check_conditional_symmetry(params, n, AsymMethod::Convolution));
  }
  return {"planar-symmetry", worst <= tol,
          "mirror identity of the planar walk, 20 random parameter sets, "
          "closed-form + convolution routes, n <= 15: max deviation " +
              fmt3(worst) + " (tol " + fmt3(tol) + ")"};
}

CheckResult check_monotonicity_45(const VerifyOptions&) {
  const double tol = -1e-10;
  double slack = 0.0;
  for (const auto& [a, b] : kFigureAB)
    slack = std::min(
        slack, curve_min_slack(condvar_45(KineticsParams(a, b), 0.25, 0.25, 50)));
  SplitMix64 rng(0xF0545ULL);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = rng.uniform(0.02, 0.98);
    const double b = rng.uniform(0.02, 0.98);
    const double alpha = rng.uniform(0.05, 0.45);
    const int n = rng.uniform_int(2, 60);
    const KineticsParams params(a, b, init_cycle(trial));
    slack =
        std::min(slack, curve_min_slack(condvar_45(params, alpha, 0.5 - alpha, n)));
  }
  return {"monotonicity-45", slack >= tol,
          "45-degree conditional variance nondecreasing, 3 figure sets (n=50) "
          "+ 10 random sets (n <= 60): min slack " +
              fmt3(slack) + " (tol " + fmt3(tol) + ")"};
}

CheckResult check_monotonicity_gaussian(const VerifyOptions&) {
  const double tol = -1e-9;
  double slack = 0.0;
  for (const auto& [a, b] : kFigureAB) {
    const GaussianModel model{KineticsParams(a, b), 0.25, 0.25, 50};
    // The derivative of the curve carries a factor x, so monotonicity holds
    // from the origin rightward; the grid starts at 0.
    const double hi = default_x_range(model).second;
    slack = std::min(slack,
                     curve_min_slack(condvar_gaussian_curve(model, 0.0, hi, 0.01)));
  }
  return {"monotonicity-gaussian", slack >= tol,
          "gaussian conditional variance nondecreasing on a 0.01 grid over "
          "[0, n + 4 sqrt(2 n alpha)], 3 figure sets at n=50: min slack " +
              fmt3(slack) + " (tol " + fmt3(tol) + ")"};
}

CheckResult check_non_monotonicity(const VerifyOptions&) {
  const double required = 1e-6;
  const KineticsParams params(0.01, 0.01);
  const double dip_simple =
      curve_max_dip(condvar_simple(params, 0.25, 0.25, 50));
  const double dip_nn = curve_max_dip(condvar_nn(params, 0.2, 25));
  const bool pass = dip_simple > required && dip_nn > required;
  return {"non-monotonicity", pass,
          "conditional-variance dips: simple n=50 " + fmt3(dip_simple) +
              ", nearest-neighbor n=25 " + fmt3(dip_nn) + " (required > " +
              fmt3(required) + ")"};
}

CheckResult check_double_peak(const VerifyOptions&) {
  const KineticsParams params(0.01, 0.01);
  const OccupationPmf occ = occupation_pmf(params, 50);
  const ModeReport occ_modes = count_modes(occ);

  const LatticePmf pmf = joint_pmf_simple(params, 0.25, 0.25, 50);
  std::vector<double> marginal(101, 0.0);
  for (const auto& [x, p] : pmf.marginal_x())
    marginal[static_cast<std::size_t>(x)] = p;
  const ModeReport marg_modes = count_modes(marginal);

  const bool pass = occ_modes.count >= 2 && marg_modes.count >= 2;
  return {"double-peak", pass,
          "a=b=0.01 n=50: occupation pmf has " +
              std::to_string(occ_modes.count) +
              " modes, x-marginal of the simple pmf has " +
              std::to_string(marg_modes.count) + " modes (required >= 2)"};
}

CheckResult check_total_variance(const VerifyOptions&) {
  const double tol = 1e-10;
  const std::array<int, 6> times = {1, 2, 5, 10, 25, 50};
  const std::array<std::pair<double, double>, 2> kinetics = {
      {{0.1, 0.9}, {0.01, 0.01}}};
  double worst = 0.0;
  for (const auto& [a, b] : kinetics) {
    const KineticsParams params(a, b);
    for (int n : times) {
      const double mean_k = occupation_mean(occupation_pmf(params, n));
      const double simple =
          lattice_second_moment_y(joint_pmf_simple(params, 0.25, 0.25, n));
      worst = std::max(worst, std::abs(simple - 0.5 * mean_k));
      const double ff =
          lattice_second_moment_y(joint_pmf_45(params, 0.25, 0.25, n));
      worst = std::max(worst, std::abs(ff - 1.0 * mean_k));
      const double nn = lattice_second_moment_y(joint_pmf_nn(params, 0.2, n));
      worst = std::max(worst, std::abs(nn - 0.8 * mean_k));
    }
  }
  return {"total-variance", worst <= tol,
          "sum_y y^2 P = Var(Y_1) E[K_n] for all three lattice models, n <= "
          "50: max error " +
              fmt3(worst) + " (tol " + fmt3(tol) + ")"};
}

CheckResult check_monte_carlo(const VerifyOptions& opt) {
  const double tv_tol = 0.02;
  const KineticsParams params(0.1, 0.9);
  const int n = 50;
  const LatticePmf exact = joint_pmf_simple(params, 0.25, 0.25, n);
  const CondVarCurve exact_curve = condvar_simple(params, 0.25, 0.25, n);

  SimulationConfig config;
  config.model = SimpleRW{0.25, 0.25};
  config.kinetics = params;
  config.n = n;
  config.particles = 1'000'000;
  config.seed = opt.mc_seed;
  const EmpiricalSummary summary = simulate(config);

  const double tv = total_variation(summary, exact);

  int checked = 0, violations = 0;
  double worst_sigmas = 0.0;
  for (const auto& [x, stats] : summary.columns) {
    if (stats.count < 1000) continue;
    const CondVarEntry* entry = exact_curve.at_x(static_cast<double>(x));
    if (entry == nullptr) {
      ++violations;
      continue;
    }
    ++checked;
    const double err = std::abs(stats.variance() - entry->cond_var);
    const double se = stats.variance_stderr();
    if (err > 4.0 * se) ++violations;
    if (se > 0.0) worst_sigmas = std::max(worst_sigmas, err / se);
  }
  const bool pass = tv <= tv_tol && violations == 0 && checked > 0;
  return {"monte-carlo", pass,
          "10^6 particles, seed " + std::to_string(opt.mc_seed) +
              ", simple n=50 a=0.1 b=0.9: TV " + fmt3(tv) + " (tol " +
              fmt3(tv_tol) + "); " + std::to_string(checked) +
              " columns with >= 1000 particles, worst deviation " +
              fmt3(worst_sigmas) + " sigma (limit 4), " +
              std::to_string(violations) + " violations"};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CheckResult check_manifest_reproducibility(const VerifyOptions& opt) {
  fs::path dir;
  if (opt.work_dir.empty()) {
    dir = fs::temp_directory_path() /
          ("kplume-verify-" + std::to_string(std::random_device{}()));
  } else {
    dir = opt.work_dir;
  }
  fs::create_directories(dir);

  std::vector<RunSpec> specs;
  {
    RunSpec s;
    s.command = "kinetics";
    s.a = 0.5;
    s.b = 0.5;
    s.n = 3;
    s.modes = true;
    s.out = (dir / "kin.csv").string();
    specs.push_back(s);
  }
  {
    RunSpec s;
    s.command = "pmf";
    s.model = "simple";
    s.a = 0.1;
    s.b = 0.9;
    s.n = 8;
    s.alpha = 0.25;
    s.beta = 0.25;
    s.marginal = true;
    s.out = (dir / "plume.csv").string();
    specs.push_back(s);
  }
  {
    RunSpec s;
    s.command = "pmf";
    s.model = "gauss";
    s.a = 0.2;
    s.b = 0.4;
    s.n = 6;
    s.alpha = 0.25;
    s.beta = 0.25;
    s.grid_step = 1.0;
    s.format = "json";
    s.out = (dir / "gauss.json").string();
    specs.push_back(s);
  }
  {
    RunSpec s;
    s.command = "condvar";
    s.model = "ff45";
    s.a = 0.3;
    s.b = 0.6;
    s.n = 10;
    s.alpha = 0.25;
    s.beta = 0.25;
    s.out = (dir / "cv.csv").string();
    specs.push_back(s);
  }
  {
    RunSpec s;
    s.command = "mc";
    s.model = "simple";
    s.a = 0.1;
    s.b = 0.9;
    s.n = 5;
    s.alpha = 0.25;
    s.beta = 0.25;
    s.particles = 2000;
    s.seed = 42;
    s.out = (dir / "mc.csv").string();
    specs.push_back(s);
  }

  int files_compared = 0, mismatches = 0;
  std::string first_mismatch;
  for (const RunSpec& spec : specs) {
    const RunResult first = execute_run(spec);
    std::vector<std::pair<std::string, std::string>> snapshot;
    for (const std::string& path : first.outputs)
      snapshot.emplace_back(path, slurp(path));
    const RunResult second = rerun_from_manifest(first.manifest_path);
    if (second.outputs != first.outputs) {
      ++mismatches;
      if (first_mismatch.empty()) first_mismatch = spec.command + " output list";
      continue;
    }
    for (const auto& [path, bytes] : snapshot) {
      ++files_compared;
      if (slurp(path) != bytes) {
        ++mismatches;
        if (first_mismatch.empty()) first_mismatch = path;
      }
    }
  }
  std::error_code ec;
  if (opt.work_dir.empty()) fs::remove_all(dir, ec);

  const bool pass = mismatches == 0 && files_compared > 0;
  return {"manifest-reproducibility", pass,
          "5 commands replayed from their manifests, " +
              std::to_string(files_compared) + " files byte-compared" +
              (mismatches ? ", first mismatch: " + first_mismatch
                          : ", all identical")};
}

using CheckFn = CheckResult (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, CheckFn>>& check_table() {
  static const std::vector<std::pair<std::string, CheckFn>> table = {
      {"occupation-oracle", check_occupation_oracle},
      {"normalization", check_normalization},
      {"closed-vs-convolution", check_closed_vs_convolution},
      {"symmetry", check_symmetry},
      {"planar-symmetry", check_planar_symmetry},
      {"monotonicity-45", check_monotonicity_45},
      {"monotonicity-gaussian", check_monotonicity_gaussian},
      {"non-monotonicity", check_non_monotonicity},
      {"double-peak", check_double_peak},
      {"total-variance", check_total_variance},
      {"monte-carlo", check_monte_carlo},
      {"manifest-reproducibility", check_manifest_reproducibility},
  };
  return table;
}

}  // namespace

std::vector<std::string> verification_check_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : check_table()) names.push_back(name);
  return names;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> results;
  for (const auto& [name, fn] : check_table()) {
    if (!options.only.empty() && options.only != name) continue;
    results.push_back(fn(options));
  }
  return results;
}

bool report_verification(const std::vector<CheckResult>& results) {
  int passed = 0;
  const int total = static_cast<int>(results.size());
  for (int i = 0; i < total; ++i) {
    const CheckResult& r = results[static_cast<std::size_t>(i)];
    if (r.pass) ++passed;
    std::printf("[%2d/%d] %s %s: %s\n", i + 1, total,
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
  }
  std::printf("verification: %d/%d checks passed\n", passed, total);
  std::fflush(stdout);
  return passed == total;
}

}  // namespace kplume
