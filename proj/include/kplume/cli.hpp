#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kplume {

/// Fully resolved parameters of one data-producing command (kinetics, pmf,
/// condvar or mc). This is exactly what the run manifest records, so a run
/// can be replayed byte-for-byte from its manifest.
struct RunSpec {
  std::string command;  // kinetics | pmf | condvar | mc
  std::string model;    // simple | ff45 | nn | gauss ("" for kinetics)
  int n = 1;
  double a = 0.0;
  double b = 0.0;
  std::string init = "stationary";  // stationary | free | adsorbed | custom:<pf>

  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> xi;

  std::optional<std::int64_t> particles;
  std::optional<std::uint64_t> seed;
  std::optional<double> bin_width;

  std::optional<double> grid_step;  // gauss grids
  std::optional<double> x_min, x_max, y_min, y_max;

  bool marginal = false;  // pmf: also emit the x-marginal
  bool modes = false;     // kinetics: append a mode report

  std::string format = "csv";  // csv | json
  std::string out;             // primary output path ("" = stdout)
};

struct RunResult {
  std::vector<std::string> outputs;   // files written (primary first)
  std::string manifest_path;          // "" when writing to stdout
  std::string stdout_text;            // populated when out == ""
};

/// Executes a resolved run: computes, writes the output file(s) and the
/// manifest next to them. Throws on invalid parameters.
RunResult execute_run(const RunSpec& spec);

/// Reads a manifest written by execute_run and replays the run it records.
RunResult rerun_from_manifest(const std::string& manifest_path);

/// Full command-line front end. Returns the process exit code:
/// 0 success, 1 verification failure, 2 usage or parameter error.
int run_cli(const std::vector<std::string>& args);

}  // namespace kplume
