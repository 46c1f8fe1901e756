#include "kplume/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "kplume/gaussian.hpp"
#include "kplume/grid.hpp"
#include "kplume/io.hpp"
#include "kplume/kinetics.hpp"
#include "kplume/lattice.hpp"
#include "kplume/montecarlo.hpp"
#include "kplume/verify.hpp"
#include "kplume/version.hpp"

namespace fs = std::filesystem;

namespace kplume {

namespace {

constexpr int kSchemaVersion = 1;

struct OutputPlan {
  bool to_stdout = false;
  fs::path primary;

  fs::path aux(const std::string& tag) const {
    fs::path p = primary;
    const std::string stem = p.stem().string();
    const std::string ext = p.extension().string();
    p.replace_filename(stem + "_" + tag + ext);
    return p;
  }
  fs::path manifest() const {
    fs::path p = primary;
    p.replace_filename(p.stem().string() + ".manifest.json");
    return p;
  }
};

OutputPlan plan_outputs(const RunSpec& spec) {
  OutputPlan plan;
  if (spec.out.empty()) {
    plan.to_stdout = true;
    return plan;
  }
  fs::path p = spec.out;
  if (p.extension().empty())
    p.replace_extension(spec.format == "json" ? ".json" : ".csv");
  plan.primary = p;
  return plan;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

KineticsParams kinetics_of(const RunSpec& spec) {
  return {spec.a, spec.b, InitialDistribution::parse(spec.init)};
}

/// Fills in everything the command will actually use, so the manifest
/// records a complete, replayable parameter set.
void resolve(RunSpec& spec) {
  if (spec.command != "kinetics") {
    require(!spec.model.empty(), "--model is required");
    if (spec.model == "ff") spec.model = "ff45";  // accepted shorthand
    require(spec.model == "simple" || spec.model == "ff45" ||
                spec.model == "nn" || spec.model == "gauss",
            "unknown model '" + spec.model + "'");
    if (spec.model == "nn") {
      require(spec.xi.has_value(), "model nn requires --xi");
      spec.alpha.reset();
      spec.beta.reset();
    } else {
      require(spec.alpha.has_value() && spec.beta.has_value(),
              "model " + spec.model + " requires --alpha and --beta");
      spec.xi.reset();
    }
  } else {
    spec.model.clear();
    spec.alpha.reset();
    spec.beta.reset();
    spec.xi.reset();
  }
  require(spec.format == "csv" || spec.format == "json",
          "--format must be csv or json");

  if (spec.model == "gauss" &&
      (spec.command == "pmf" || spec.command == "condvar")) {
    GaussianModel gm{kinetics_of(spec), *spec.alpha, *spec.beta, spec.n};
    const auto [lo, hi] = default_x_range(gm);
    if (!spec.grid_step)
      spec.grid_step = spec.command == "condvar" ? 0.01 : 0.5;
    if (!spec.x_min) spec.x_min = lo;
    if (!spec.x_max) spec.x_max = hi;
    const double yspread =
        4.0 * std::sqrt(2.0 * static_cast<double>(spec.n) * *spec.beta);
    if (!spec.y_min) spec.y_min = -yspread;
    if (!spec.y_max) spec.y_max = yspread;
  } else {
    spec.grid_step.reset();
    spec.x_min.reset();
    spec.x_max.reset();
    spec.y_min.reset();
    spec.y_max.reset();
  }

  if (spec.command == "mc") {
    require(spec.particles.has_value() && *spec.particles >= 1,
            "mc requires --particles >= 1");
    if (!spec.seed) spec.seed = 0;
    if (spec.model == "gauss") {
      if (!spec.bin_width) spec.bin_width = 0.1;
      require(*spec.bin_width > 0.0, "--bin-width must be > 0");
    } else {
      spec.bin_width.reset();
    }
  } else {
    spec.particles.reset();
    spec.seed.reset();
    spec.bin_width.reset();
  }
  if (spec.command != "pmf") spec.marginal = false;
  if (spec.command != "kinetics") spec.modes = false;
}

JsonValue params_json(const RunSpec& spec) {
  JsonValue p = JsonValue::object();
  if (!spec.model.empty()) p.add("model", JsonValue::str(spec.model));
  p.add("n", JsonValue::integer(spec.n));
  p.add("a", JsonValue::num(spec.a));
  p.add("b", JsonValue::num(spec.b));
  p.add("init", JsonValue::str(spec.init));
  if (spec.alpha) p.add("alpha", JsonValue::num(*spec.alpha));
  if (spec.beta) p.add("beta", JsonValue::num(*spec.beta));
  if (spec.xi) p.add("xi", JsonValue::num(*spec.xi));
  if (spec.particles) p.add("particles", JsonValue::integer(*spec.particles));
  if (spec.seed) p.add("seed", JsonValue::uinteger(*spec.seed));
  if (spec.bin_width) p.add("bin_width", JsonValue::num(*spec.bin_width));
  if (spec.grid_step) p.add("grid_step", JsonValue::num(*spec.grid_step));
  if (spec.x_min) p.add("x_min", JsonValue::num(*spec.x_min));
  if (spec.x_max) p.add("x_max", JsonValue::num(*spec.x_max));
  if (spec.y_min) p.add("y_min", JsonValue::num(*spec.y_min));
  if (spec.y_max) p.add("y_max", JsonValue::num(*spec.y_max));
  if (spec.command == "pmf")
    p.add("marginal", JsonValue::boolean(spec.marginal));
  if (spec.command == "kinetics")
    p.add("modes", JsonValue::boolean(spec.modes));
  p.add("format", JsonValue::str(spec.format));
  p.add("out", JsonValue::str(spec.out));
  return p;
}

JsonValue result_header(const RunSpec& spec) {
  JsonValue doc = JsonValue::object();
  doc.add("schema_version", JsonValue::integer(kSchemaVersion));
  doc.add("command", JsonValue::str(spec.command));
  if (!spec.model.empty()) doc.add("model", JsonValue::str(spec.model));
  doc.add("n", JsonValue::integer(spec.n));
  doc.add("params", params_json(spec));
  return doc;
}

std::string manifest_text(const RunSpec& spec,
                          const std::vector<std::string>& outputs) {
  JsonValue doc = JsonValue::object();
  doc.add("schema_version", JsonValue::integer(kSchemaVersion));
  doc.add("artifact_version", JsonValue::str(kVersion));
  doc.add("timestamp", JsonValue::str(utc_timestamp()));
  doc.add("command", JsonValue::str(spec.command));
  doc.add("seed", JsonValue::uinteger(spec.seed.value_or(0)));
  doc.add("params", params_json(spec));
  JsonValue outs = JsonValue::array();
  for (const std::string& o : outputs) outs.push(JsonValue::str(o));
  doc.add("outputs", std::move(outs));
  return doc.dump();
}

// ---------------------------------------------------------------------------
// command payloads; each returns (tag -> content), "" being the primary file
// ---------------------------------------------------------------------------

using Payload = std::vector<std::pair<std::string, std::string>>;

Payload payload_kinetics(const RunSpec& spec) {
  const OccupationPmf pmf = occupation_pmf(kinetics_of(spec), spec.n);
  Payload out;
  if (spec.format == "csv") {
    CsvBuilder csv{"k", "f_n_k"};
    for (std::size_t k = 0; k < pmf.probs.size(); ++k)
      csv.cell(static_cast<std::int64_t>(k)).cell(pmf.probs[k]).endrow();
    out.emplace_back("", csv.str());
    if (spec.modes) {
      const ModeReport report = count_modes(pmf);
      CsvBuilder modes{"mode", "k", "f_n_k"};
      for (int i = 0; i < report.count; ++i)
        modes.cell(i)
            .cell(report.locations[static_cast<std::size_t>(i)])
            .cell(pmf.probs[static_cast<std::size_t>(
                report.locations[static_cast<std::size_t>(i)])])
            .endrow();
      out.emplace_back("modes", modes.str());
    }
  } else {
    JsonValue doc = result_header(spec);
    JsonValue f = JsonValue::array();
    for (double p : pmf.probs) f.push(JsonValue::num(p));
    doc.add("f", std::move(f));
    if (spec.modes) {
      const ModeReport report = count_modes(pmf);
      JsonValue m = JsonValue::object();
      m.add("count", JsonValue::integer(report.count));
      JsonValue locs = JsonValue::array();
      for (int k : report.locations) locs.push(JsonValue::integer(k));
      m.add("locations", std::move(locs));
      doc.add("modes", std::move(m));
    }
    out.emplace_back("", doc.dump());
  }
  return out;
}

LatticePmf lattice_pmf_of(const RunSpec& spec) {
  const KineticsParams kp = kinetics_of(spec);
  if (spec.model == "simple")
    return joint_pmf_simple(kp, *spec.alpha, *spec.beta, spec.n);
  if (spec.model == "ff45")
    return joint_pmf_45(kp, *spec.alpha, *spec.beta, spec.n);
  return joint_pmf_nn(kp, *spec.xi, spec.n);
}

CondVarCurve condvar_of(const RunSpec& spec) {
  const KineticsParams kp = kinetics_of(spec);
  if (spec.model == "simple")
    return condvar_simple(kp, *spec.alpha, *spec.beta, spec.n);
  if (spec.model == "ff45")
    return condvar_45(kp, *spec.alpha, *spec.beta, spec.n);
  if (spec.model == "nn") return condvar_nn(kp, *spec.xi, spec.n);
  GaussianModel gm{kp, *spec.alpha, *spec.beta, spec.n};
  return condvar_gaussian_curve(gm, *spec.x_min, *spec.x_max, *spec.grid_step);
}

Payload payload_pmf(const RunSpec& spec) {
  Payload out;
  if (spec.model == "gauss") {
    const GaussianModel gm{kinetics_of(spec), *spec.alpha, *spec.beta, spec.n};
    const double f0 = atom_mass(gm);
    const double weight = 1.0 - f0;
    const double step = *spec.grid_step;
    const auto grid = [&](double lo, double hi) {
      std::vector<double> g;
      for (long i = 0;; ++i) {
        const double v = lo + static_cast<double>(i) * step;
        if (v > hi + 1e-9) break;
        g.push_back(v);
      }
      return g;
    };
    const std::vector<double> xs = grid(*spec.x_min, *spec.x_max);
    const std::vector<double> ys = grid(*spec.y_min, *spec.y_max);
    if (spec.format == "csv") {
      CsvBuilder csv{"x", "y", "p"};
      for (double x : xs)
        for (double y : ys)
          csv.cell(x).cell(y).cell(weight * density(gm, x, y)).endrow();
      out.emplace_back("", csv.str());
      CsvBuilder atom{"x", "y", "mass"};
      atom.cell(0.0).cell(0.0).cell(f0).endrow();
      out.emplace_back("atom", atom.str());
      if (spec.marginal) {
        CsvBuilder marg{"x", "p"};
        for (double x : xs)
          marg.cell(x).cell(weight * marginal_density_x(gm, x)).endrow();
        out.emplace_back("marginal", marg.str());
      }
    } else {
      JsonValue doc = result_header(spec);
      doc.add("atom_mass", JsonValue::num(f0));
      JsonValue cells = JsonValue::array();
      for (double x : xs)
        for (double y : ys) {
          JsonValue row = JsonValue::array();
          row.push(JsonValue::num(x))
              .push(JsonValue::num(y))
              .push(JsonValue::num(weight * density(gm, x, y)));
          cells.push(std::move(row));
        }
      doc.add("cells", std::move(cells));
      if (spec.marginal) {
        JsonValue marg = JsonValue::array();
        for (double x : xs) {
          JsonValue row = JsonValue::array();
          row.push(JsonValue::num(x))
              .push(JsonValue::num(weight * marginal_density_x(gm, x)));
          marg.push(std::move(row));
        }
        doc.add("marginal", std::move(marg));
      }
      out.emplace_back("", doc.dump());
    }
    return out;
  }

  const LatticePmf pmf = lattice_pmf_of(spec);
  if (spec.format == "csv") {
    CsvBuilder csv{"x", "y", "p"};
    for (const auto& [pt, p] : pmf.support)
      csv.cell(pt.x).cell(pt.y).cell(p).endrow();
    out.emplace_back("", csv.str());
    if (spec.marginal) {
      CsvBuilder marg{"x", "p"};
      for (const auto& [x, p] : pmf.marginal_x()) marg.cell(x).cell(p).endrow();
      out.emplace_back("marginal", marg.str());
    }
  } else {
    JsonValue doc = result_header(spec);
    JsonValue cells = JsonValue::array();
    for (const auto& [pt, p] : pmf.support) {
      JsonValue row = JsonValue::array();
      row.push(JsonValue::integer(pt.x))
          .push(JsonValue::integer(pt.y))
          .push(JsonValue::num(p));
      cells.push(std::move(row));
    }
    doc.add("cells", std::move(cells));
    if (spec.marginal) {
      JsonValue marg = JsonValue::array();
      for (const auto& [x, p] : pmf.marginal_x()) {
        JsonValue row = JsonValue::array();
        row.push(JsonValue::integer(x)).push(JsonValue::num(p));
        marg.push(std::move(row));
      }
      doc.add("marginal", std::move(marg));
    }
    out.emplace_back("", doc.dump());
  }
  return out;
}

Payload payload_condvar(const RunSpec& spec) {
  const CondVarCurve curve = condvar_of(spec);
  Payload out;
  if (spec.format == "csv") {
    CsvBuilder csv{"x", "marginal", "cond_mean", "cond_var"};
    for (const CondVarEntry& e : curve.entries)
      csv.cell(e.x).cell(e.marginal).cell(e.cond_mean).cell(e.cond_var).endrow();
    out.emplace_back("", csv.str());
  } else {
    JsonValue doc = result_header(spec);
    JsonValue entries = JsonValue::array();
    for (const CondVarEntry& e : curve.entries) {
      JsonValue row = JsonValue::array();
      row.push(JsonValue::num(e.x))
          .push(JsonValue::num(e.marginal))
          .push(JsonValue::num(e.cond_mean))
          .push(JsonValue::num(e.cond_var));
      entries.push(std::move(row));
    }
    doc.add("entries", std::move(entries));
    out.emplace_back("", doc.dump());
  }
  return out;
}

Payload payload_mc(const RunSpec& spec) {
  SimulationConfig config;
  config.kinetics = kinetics_of(spec);
  config.n = spec.n;
  config.particles = *spec.particles;
  config.seed = *spec.seed;
  if (spec.model == "simple")
    config.model = SimpleRW{*spec.alpha, *spec.beta};
  else if (spec.model == "ff45")
    config.model = FortyFive{*spec.alpha, *spec.beta};
  else if (spec.model == "nn")
    config.model = NearestNeighbor{*spec.xi};
  else {
    config.model = GaussianDispersion{*spec.alpha, *spec.beta};
    config.bin_width = *spec.bin_width;
  }
  const EmpiricalSummary summary = simulate(config);
  const bool lattice = summary.lattice;

  Payload out;
  if (spec.format == "csv") {
    CsvBuilder hist{"x", "y", "count"};
    for (const auto& [pt, c] : summary.histogram) {
      if (lattice)
        hist.cell(pt.x).cell(pt.y);
      else
        hist.cell(summary.bin_center(pt.x)).cell(summary.bin_center(pt.y));
      hist.cell(c).endrow();
    }
    out.emplace_back("", hist.str());
    CsvBuilder cond{"x", "count", "cond_mean", "cond_var"};
    for (const auto& [x, stats] : summary.columns) {
      if (lattice)
        cond.cell(x);
      else
        cond.cell(summary.bin_center(x));
      cond.cell(stats.count).cell(stats.mean()).cell(stats.variance()).endrow();
    }
    out.emplace_back("condvar", cond.str());
  } else {
    JsonValue doc = result_header(spec);
    doc.add("particles", JsonValue::integer(summary.particles));
    JsonValue hist = JsonValue::array();
    for (const auto& [pt, c] : summary.histogram) {
      JsonValue row = JsonValue::array();
      if (lattice)
        row.push(JsonValue::integer(pt.x)).push(JsonValue::integer(pt.y));
      else
        row.push(JsonValue::num(summary.bin_center(pt.x)))
            .push(JsonValue::num(summary.bin_center(pt.y)));
      row.push(JsonValue::integer(c));
      hist.push(std::move(row));
    }
    doc.add("histogram", std::move(hist));
    JsonValue cols = JsonValue::array();
    for (const auto& [x, stats] : summary.columns) {
      JsonValue row = JsonValue::array();
      if (lattice)
        row.push(JsonValue::integer(x));
      else
        row.push(JsonValue::num(summary.bin_center(x)));
      row.push(JsonValue::integer(stats.count))
          .push(JsonValue::num(stats.mean()))
          .push(JsonValue::num(stats.variance()));
      cols.push(std::move(row));
    }
    doc.add("columns", std::move(cols));
    out.emplace_back("", doc.dump());
  }
  return out;
}

}  // namespace

RunResult execute_run(const RunSpec& input) {
  RunSpec spec = input;
  require(spec.command == "kinetics" || spec.command == "pmf" ||
              spec.command == "condvar" || spec.command == "mc",
          "unknown command '" + spec.command + "'");
  if (spec.n < 1) throw std::invalid_argument("--n must be >= 1");
  resolve(spec);

  Payload payload;
  if (spec.command == "kinetics")
    payload = payload_kinetics(spec);
  else if (spec.command == "pmf")
    payload = payload_pmf(spec);
  else if (spec.command == "condvar")
    payload = payload_condvar(spec);
  else
    payload = payload_mc(spec);

  RunResult result;
  const OutputPlan plan = plan_outputs(spec);
  if (plan.to_stdout) {
    result.stdout_text = payload.front().second;
    return result;
  }
  for (const auto& [tag, content] : payload) {
    const fs::path path = tag.empty() ? plan.primary : plan.aux(tag);
    write_file(path.string(), content);
    result.outputs.push_back(path.string());
  }
  result.manifest_path = plan.manifest().string();
  write_file(result.manifest_path, manifest_text(spec, result.outputs));
  return result;
}

RunResult rerun_from_manifest(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in)
    throw std::invalid_argument("cannot open manifest '" + manifest_path + "'");
  nlohmann::json doc = nlohmann::json::parse(in);

  RunSpec spec;
  spec.command = doc.at("command").get<std::string>();
  const nlohmann::json& p = doc.at("params");
  if (p.contains("model")) spec.model = p["model"].get<std::string>();
  spec.n = p.at("n").get<int>();
  spec.a = p.at("a").get<double>();
  spec.b = p.at("b").get<double>();
  spec.init = p.at("init").get<std::string>();
  auto opt_num = [&](const char* key) -> std::optional<double> {
    if (p.contains(key)) return p[key].get<double>();
    return std::nullopt;
  };
  spec.alpha = opt_num("alpha");
  spec.beta = opt_num("beta");
  spec.xi = opt_num("xi");
  if (p.contains("particles"))
    spec.particles = p["particles"].get<std::int64_t>();
  if (p.contains("seed")) spec.seed = p["seed"].get<std::uint64_t>();
  spec.bin_width = opt_num("bin_width");
  spec.grid_step = opt_num("grid_step");
  spec.x_min = opt_num("x_min");
  spec.x_max = opt_num("x_max");
  spec.y_min = opt_num("y_min");
  spec.y_max = opt_num("y_max");
  if (p.contains("marginal")) spec.marginal = p["marginal"].get<bool>();
  if (p.contains("modes")) spec.modes = p["modes"].get<bool>();
  spec.format = p.at("format").get<std::string>();
  spec.out = p.at("out").get<std::string>();
  if (spec.out.empty())
    throw std::invalid_argument("manifest records a stdout run; nothing to replay");
  return execute_run(spec);
}

namespace {

void add_kinetics_options(CLI::App* cmd, RunSpec& spec) {
  cmd->add_option("--a", spec.a, "P(free -> adsorbed) per step")->required();
  cmd->add_option("--b", spec.b, "P(adsorbed -> free) per step")->required();
  cmd->add_option("--init", spec.init,
                  "initial state law: stationary|free|adsorbed|custom:<pf>");
  cmd->add_option("--n", spec.n, "number of time steps")->required();
}

void add_output_options(CLI::App* cmd, RunSpec& spec) {
  cmd->add_option("--out", spec.out,
                  "output path (stem); omit to print to stdout");
  cmd->add_option("--format", spec.format, "csv|json");
}

struct ModelOptions {
  double alpha = 0.0, beta = 0.0, xi = 0.0;
  double grid_step = 0.0, x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  CLI::Option *alpha_opt, *beta_opt, *xi_opt;
  CLI::Option *step_opt, *xmin_opt, *xmax_opt, *ymin_opt, *ymax_opt;
};

void add_model_options(CLI::App* cmd, RunSpec& spec, ModelOptions& mo,
                       bool with_grid) {
  cmd->add_option("--model", spec.model, "simple|ff45|nn|gauss")->required();
  mo.alpha_opt = cmd->add_option("--alpha", mo.alpha, "dispersion weight alpha");
  mo.beta_opt = cmd->add_option("--beta", mo.beta, "dispersion weight beta");
  mo.xi_opt = cmd->add_option("--xi", mo.xi, "diagonal weight (nn model)");
  if (with_grid) {
    mo.step_opt = cmd->add_option("--grid-step", mo.grid_step,
                                  "gauss evaluation grid step");
    mo.xmin_opt = cmd->add_option("--x-min", mo.x_min, "gauss grid lower x");
    mo.xmax_opt = cmd->add_option("--x-max", mo.x_max, "gauss grid upper x");
    mo.ymin_opt = cmd->add_option("--y-min", mo.y_min, "gauss grid lower y");
    mo.ymax_opt = cmd->add_option("--y-max", mo.y_max, "gauss grid upper y");
  }
}

void collect_model_options(const ModelOptions& mo, RunSpec& spec,
                           bool with_grid) {
  if (mo.alpha_opt->count()) spec.alpha = mo.alpha;
  if (mo.beta_opt->count()) spec.beta = mo.beta;
  if (mo.xi_opt->count()) spec.xi = mo.xi;
  if (with_grid) {
    if (mo.step_opt->count()) spec.grid_step = mo.grid_step;
    if (mo.xmin_opt->count()) spec.x_min = mo.x_min;
    if (mo.xmax_opt->count()) spec.x_max = mo.x_max;
    if (mo.ymin_opt->count()) spec.y_min = mo.y_min;
    if (mo.ymax_opt->count()) spec.y_max = mo.y_max;
  }
}

void announce(const RunResult& result) {
  if (!result.stdout_text.empty()) {
    std::cout << result.stdout_text;
    return;
  }
  for (const std::string& path : result.outputs)
    std::cout << "wrote " << path << "\n";
  std::cout << "wrote " << result.manifest_path << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"exact and Monte Carlo distributions of a kinetically adsorbed "
               "random-walk plume"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunSpec spec;
  ModelOptions pmf_mo{}, cond_mo{}, mc_mo{};

  CLI::App* kin = app.add_subcommand("kinetics", "occupation-time pmf f_n");
  add_kinetics_options(kin, spec);
  kin->add_flag("--modes", spec.modes, "also report local maxima of f_n");
  add_output_options(kin, spec);

  CLI::App* pmf = app.add_subcommand("pmf", "joint position pmf / density");
  add_model_options(pmf, spec, pmf_mo, true);
  add_kinetics_options(pmf, spec);
  pmf->add_flag("--marginal", spec.marginal, "also emit the x-marginal");
  add_output_options(pmf, spec);

  CLI::App* cond = app.add_subcommand("condvar", "lateral conditional variance curve");
  add_model_options(cond, spec, cond_mo, true);
  add_kinetics_options(cond, spec);
  add_output_options(cond, spec);

  CLI::App* mc = app.add_subcommand("mc", "seeded Monte Carlo particle run");
  add_model_options(mc, spec, mc_mo, false);
  add_kinetics_options(mc, spec);
  std::int64_t particles = 0;
  std::uint64_t seed = 0;
  double bin_width = 0.0;
  CLI::Option* particles_opt =
      mc->add_option("--particles", particles, "particle count")->required();
  CLI::Option* seed_opt = mc->add_option("--seed", seed, "RNG seed");
  CLI::Option* bin_opt =
      mc->add_option("--bin-width", bin_width, "gauss x/y bin width");
  add_output_options(mc, spec);

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  VerifyOptions vopts;
  verify->add_option("--only", vopts.only, "run a single named check");
  verify->add_flag("--inject-fault", vopts.inject_fault,
                   "perturb one pmf cell by 1e-6 (checker self-test)");
  double va = 0.0, vb = 0.0;
  CLI::Option* va_opt =
      verify->add_option("--a", va, "kinetics override for the symmetry check");
  CLI::Option* vb_opt =
      verify->add_option("--b", vb, "kinetics override for the symmetry check");
  verify->add_option("--work-dir", vopts.work_dir,
                     "scratch dir for the reproducibility check");

  CLI::App* rerun = app.add_subcommand("rerun", "replay a run from its manifest");
  std::string manifest_path;
  rerun->add_option("manifest", manifest_path, "manifest file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (kin->parsed()) {
      spec.command = "kinetics";
      announce(execute_run(spec));
      return 0;
    }
    if (pmf->parsed() || cond->parsed() || mc->parsed()) {
      if (pmf->parsed()) {
        spec.command = "pmf";
        collect_model_options(pmf_mo, spec, true);
      } else if (cond->parsed()) {
        spec.command = "condvar";
        collect_model_options(cond_mo, spec, true);
      } else {
        spec.command = "mc";
        collect_model_options(mc_mo, spec, false);
        if (particles_opt->count()) spec.particles = particles;
        if (seed_opt->count()) spec.seed = seed;
        if (bin_opt->count()) spec.bin_width = bin_width;
      }
      announce(execute_run(spec));
      return 0;
    }
    if (verify->parsed()) {
      if (va_opt->count()) vopts.a = va;
      if (vb_opt->count()) vopts.b = vb;
      if (!vopts.only.empty()) {
        const auto names = verification_check_names();
        if (std::find(names.begin(), names.end(), vopts.only) == names.end()) {
          std::cerr << "unknown check '" << vopts.only << "'; available:";
          for (const std::string& n : names) std::cerr << ' ' << n;
          std::cerr << '\n';
          return 2;
        }
      }
      return report_verification(run_verification(vopts)) ? 0 : 1;
    }
    if (rerun->parsed()) {
      announce(rerun_from_manifest(manifest_path));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace kplume
