#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kplume {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  /// Run only the check with this exact name ("" = all).
  std::string only;
  /// Self-test of the checker: perturb one pmf cell by 1e-6 inside the
  /// normalization check, which must then fail.
  bool inject_fault = false;
  /// Override the kinetics of the symmetry check (defaults a=0.1, b=0.9).
  std::optional<double> a, b;
  /// Seed of the Monte Carlo concordance check.
  std::uint64_t mc_seed = 20260809;
  /// Scratch directory for the manifest-reproducibility check ("" = a fresh
  /// directory under the system temp path).
  std::string work_dir;
};

/// Names of all checks, in execution order.
std::vector<std::string> verification_check_names();

/// Runs the verification suite (every check, or the one selected by
/// options.only). Each check pins its tolerance internally.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

/// Prints one "PASS name: detail" / "FAIL ..." line per result plus a
/// summary line; returns true when everything passed.
bool report_verification(const std::vector<CheckResult>& results);

}  // namespace kplume
