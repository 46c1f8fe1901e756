#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

#include "kplume/convolution.hpp"
#include "kplume/gaussian.hpp"
#include "kplume/grid.hpp"
#include "kplume/kinetics.hpp"
#include "kplume/lattice.hpp"
#include "kplume/montecarlo.hpp"
#include "kplume/verify.hpp"
#include "kplume/version.hpp"

namespace py = pybind11;
using namespace kplume;

namespace {

KineticsParams make_params(double a, double b, const std::string& init) {
  return {a, b, InitialDistribution::parse(init)};
}

McModel parse_model(const std::string& name, double alpha, double beta,
                    double xi) {
  if (name == "simple") return SimpleRW{alpha, beta};
  if (name == "ff45" || name == "ff") return FortyFive{alpha, beta};
  if (name == "nn") return NearestNeighbor{xi};
  if (name == "gauss") return GaussianDispersion{alpha, beta};
  throw std::invalid_argument("unknown model '" + name + "'");
}

py::list curve_entries(const CondVarCurve& curve) {
  py::list out;
  for (const CondVarEntry& e : curve.entries)
    out.append(py::make_tuple(e.x, e.marginal, e.cond_mean, e.cond_var));
  return out;
}

py::dict pmf_cells(const LatticePmf& pmf) {
  py::dict out;
  for (const auto& [pt, p] : pmf.support)
    out[py::make_tuple(pt.x, pt.y)] = p;
  return out;
}

}  // namespace

PYBIND11_MODULE(_kplume, m) {
  m.doc() = "exact and Monte Carlo distributions of a kinetically adsorbed "
            "random-walk plume";
  m.attr("__version__") = kVersion;

  py::register_exception<DegenerateChain>(m, "DegenerateChainError",
                                          PyExc_ValueError);
  py::register_exception<InvalidDispersion>(m, "InvalidDispersionError",
                                            PyExc_ValueError);
  py::register_exception<InvalidXi>(m, "InvalidXiError", PyExc_ValueError);
  py::register_exception<SupportOverflow>(m, "SupportOverflowError",
                                          PyExc_RuntimeError);
  py::register_exception<AllMassAtomic>(m, "AllMassAtomicError",
                                        PyExc_ValueError);

  py::class_<LatticePmf>(m, "LatticePmf")
      .def_readonly("n", &LatticePmf::n)
      .def("at", &LatticePmf::at, py::arg("x"), py::arg("y"))
      .def("mass", &LatticePmf::mass)
      .def("cells", &pmf_cells, "dict mapping (x, y) to probability")
      .def("marginal_x", [](const LatticePmf& p) { return p.marginal_x(); })
      .def("__len__", [](const LatticePmf& p) { return p.support.size(); });

  m.def("stationary",
        [](double a, double b) { return stationary(KineticsParams(a, b)); },
        py::arg("a"), py::arg("b"),
        "stationary (free, adsorbed) distribution of the two-state chain");

  m.def("occupation_pmf",
        [](double a, double b, int n, const std::string& init) {
          return occupation_pmf(make_params(a, b, init), n).probs;
        },
        py::arg("a"), py::arg("b"), py::arg("n"),
        py::arg("init") = "stationary",
        "P(K_n = k) for k = 0..n");

  m.def("occupation_mean",
        [](const std::vector<double>& probs) {
          OccupationPmf pmf{static_cast<int>(probs.size()) - 1, probs};
          return occupation_mean(pmf);
        },
        py::arg("probs"));

  m.def("count_modes",
        [](const std::vector<double>& values, double tol) {
          const ModeReport r = count_modes(values, tol);
          return py::make_tuple(r.count, r.locations);
        },
        py::arg("values"), py::arg("tol") = 1e-12,
        "(number of local maxima, plateau start indices)");

  m.def("joint_pmf",
        [](const std::string& model, double a, double b, int n,
           const std::string& init, double alpha, double beta, double xi) {
          const KineticsParams params = make_params(a, b, init);
          if (model == "simple") return joint_pmf_simple(params, alpha, beta, n);
          if (model == "ff45" || model == "ff")
            return joint_pmf_45(params, alpha, beta, n);
          if (model == "nn") return joint_pmf_nn(params, xi, n);
          throw std::invalid_argument("unknown lattice model '" + model + "'");
        },
        py::arg("model"), py::arg("a"), py::arg("b"), py::arg("n"),
        py::arg("init") = "stationary", py::arg("alpha") = 0.25,
        py::arg("beta") = 0.25, py::arg("xi") = 0.125,
        "exact joint position pmf of a lattice model");

  m.def("condvar_curve",
        [](const std::string& model, double a, double b, int n,
           const std::string& init, double alpha, double beta, double xi) {
          const KineticsParams params = make_params(a, b, init);
          if (model == "simple")
            return curve_entries(condvar_simple(params, alpha, beta, n));
          if (model == "ff45" || model == "ff")
            return curve_entries(condvar_45(params, alpha, beta, n));
          if (model == "nn") return curve_entries(condvar_nn(params, xi, n));
          throw std::invalid_argument("unknown lattice model '" + model + "'");
        },
        py::arg("model"), py::arg("a"), py::arg("b"), py::arg("n"),
        py::arg("init") = "stationary", py::arg("alpha") = 0.25,
        py::arg("beta") = 0.25, py::arg("xi") = 0.125,
        "list of (x, marginal, cond_mean, cond_var) per admissible column");

  py::class_<AsymmetricWalkParams>(m, "AsymmetricWalkParams")
      .def(py::init([](double right, double left, double up, double down) {
             return AsymmetricWalkParams{right, left, up, down};
           }),
           py::arg("right"), py::arg("left"), py::arg("up"), py::arg("down"))
      .def_readonly("right", &AsymmetricWalkParams::right)
      .def_readonly("left", &AsymmetricWalkParams::left)
      .def_readonly("up", &AsymmetricWalkParams::up)
      .def_readonly("down", &AsymmetricWalkParams::down);

  m.def("asym_joint_pmf",
        [](const AsymmetricWalkParams& params, int n, const std::string& method) {
          return asym_joint_pmf(params, n,
                                method == "convolution"
                                    ? AsymMethod::Convolution
                                    : AsymMethod::ClosedForm);
        },
        py::arg("params"), py::arg("n"), py::arg("method") = "closed");

  m.def("check_conditional_symmetry",
        [](const AsymmetricWalkParams& params, int n, const std::string& method) {
          return check_conditional_symmetry(params, n,
                                            method == "convolution"
                                                ? AsymMethod::Convolution
                                                : AsymMethod::ClosedForm);
        },
        py::arg("params"), py::arg("n"), py::arg("method") = "closed",
        "max deviation of the cross-multiplied mirror identity");

  py::class_<GaussianModel>(m, "GaussianModel")
      .def(py::init([](double a, double b, double alpha, double beta, int n,
                       const std::string& init) {
             return GaussianModel{make_params(a, b, init), alpha, beta, n};
           }),
           py::arg("a"), py::arg("b"), py::arg("alpha"), py::arg("beta"),
           py::arg("n"), py::arg("init") = "stationary")
      .def_readonly("alpha", &GaussianModel::alpha)
      .def_readonly("beta", &GaussianModel::beta)
      .def_readonly("n", &GaussianModel::n);

  m.def("gaussian_density", &density, py::arg("model"), py::arg("x"),
        py::arg("y"), "continuous-part density");
  m.def("gaussian_atom_mass", &atom_mass, py::arg("model"));
  m.def("gaussian_marginal_density_x", &marginal_density_x, py::arg("model"),
        py::arg("x"));
  m.def("gaussian_condvar", &condvar_gaussian, py::arg("model"), py::arg("x"));
  m.def("gaussian_condvar_curve",
        [](const GaussianModel& model, double x_min, double x_max, double step) {
          return curve_entries(condvar_gaussian_curve(model, x_min, x_max, step));
        },
        py::arg("model"), py::arg("x_min"), py::arg("x_max"), py::arg("step"));
  m.def("gaussian_default_x_range", &default_x_range, py::arg("model"));

  py::class_<EmpiricalSummary>(m, "EmpiricalSummary")
      .def_readonly("particles", &EmpiricalSummary::particles)
      .def_readonly("n", &EmpiricalSummary::n)
      .def_readonly("lattice", &EmpiricalSummary::lattice)
      .def_readonly("bin_width", &EmpiricalSummary::bin_width)
      .def("histogram",
           [](const EmpiricalSummary& s) {
             py::dict out;
             for (const auto& [pt, c] : s.histogram)
               out[py::make_tuple(pt.x, pt.y)] = c;
             return out;
           })
      .def("marginal", &EmpiricalSummary::empirical_marginal)
      .def("condvar",
           [](const EmpiricalSummary& s, std::int64_t min_count) {
             return curve_entries(s.condvar(min_count));
           },
           py::arg("min_count") = 1)
      .def("bin_center", &EmpiricalSummary::bin_center, py::arg("index"));

  m.def("simulate",
        [](const std::string& model, double a, double b, int n,
           std::int64_t particles, std::uint64_t seed, const std::string& init,
           double alpha, double beta, double xi, double bin_width,
           int threads) {
          SimulationConfig config;
          config.model = parse_model(model, alpha, beta, xi);
          config.kinetics = make_params(a, b, init);
          config.n = n;
          config.particles = particles;
          config.seed = seed;
          config.bin_width = bin_width;
          config.threads = threads;
          return simulate(config);
        },
        py::arg("model"), py::arg("a"), py::arg("b"), py::arg("n"),
        py::arg("particles"), py::arg("seed") = 0,
        py::arg("init") = "stationary", py::arg("alpha") = 0.25,
        py::arg("beta") = 0.25, py::arg("xi") = 0.125,
        py::arg("bin_width") = 0.1, py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "seeded particle run; bitwise deterministic for a given seed");

  m.def("total_variation", &total_variation, py::arg("empirical"),
        py::arg("exact"));

  m.def("verify",
        [](const std::string& only) {
          VerifyOptions options;
          options.only = only;
          std::vector<CheckResult> results;
          {
            py::gil_scoped_release release;
            results = run_verification(options);
          }
          py::list out;
          for (const CheckResult& r : results)
            out.append(py::make_tuple(r.name, r.pass, r.detail));
          return out;
        },
        py::arg("only") = "",
        "run the verification suite; list of (name, passed, detail)");
}
