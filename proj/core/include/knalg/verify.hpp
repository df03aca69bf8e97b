#pragma once

#include <string>
#include <vector>

#include "knalg/algebra.hpp"
#include "knalg/run_config.hpp"

namespace knalg {

/// Measured checks report a number without certifying anything; skipped checks could not run
/// for the configured parameters (e.g. degenerate central coefficients).
enum class CheckStatus { Pass, Fail, Measured, Skipped };

std::string statusName(CheckStatus s);

struct CheckResult {
  std::string name;       ///< e.g. "duality.plus"
  std::string certifies;  ///< the identity checked, in words
  CheckStatus status = CheckStatus::Pass;
  double residual = 0.0;  ///< worst measured deviation
  double tolerance = 0.0;
  std::string witness;    ///< index tuple of the worst case
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  TableMetadata metadata;
  std::vector<CheckResult> checks;

  /// True when no check failed.
  bool passed() const;
};

enum class Suite { Duality, Antisymmetry, Band, Limits, Cocycle, Jacobi, All };

/// "duality", "antisymmetry", "band", "limits", "cocycle", "jacobi", "all". Throws UsageError.
Suite parseSuite(const std::string& text);
std::string suiteName(Suite s);

/// Runs the checks of one suite (or all of them) for the configured surface.
VerificationReport runVerification(const RunConfig& cfg, Suite suite);

std::string reportToJson(const VerificationReport& report);
/// Columns: name,status,residual,tolerance,witness.
std::string reportToCsv(const VerificationReport& report);

/// Largest operator and central residual of the cyclic sum of [[L_m, L_n], L_k] over index
/// triples with |m|, |n|, |k| <= bound. Inner sums run over s in [-window, window].
struct JacobiResidual {
  double operatorPart = 0.0;
  double centralPart = 0.0;
  HalfInt m, n, k;
  int skippedTerms = 0;  ///< products whose Omega index lies outside the family
};
JacobiResidual jacobiResidual(const BasisFamily& family, HalfInt bound, HalfInt window);

}  // namespace knalg
