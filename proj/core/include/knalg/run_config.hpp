#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "knalg/algebra.hpp"
#include "knalg/basis.hpp"
#include "knalg/half_int.hpp"
#include "knalg/qcalc.hpp"

namespace knalg {

enum class OutputFormat { Json, Csv };

/// Everything a CLI run depends on. Fields left unset fall back to documented defaults.
struct RunConfig {
  int genus = 0;
  std::optional<cplx> tau;  ///< with omega1 = 1; mutually exclusive with omega1/omega2
  std::optional<cplx> omega1;
  std::optional<cplx> omega2;
  cplx z0{0.17, 0.11};
  DeformationParams params;
  std::optional<HalfInt> range;
  int depth = 48;
  double tol = 1e-9;
  OutputFormat format = OutputFormat::Json;
  std::optional<std::filesystem::path> basisFile;
  std::optional<std::filesystem::path> out;

  static constexpr cplx kDefaultTau{0.5, 0.8};

  /// range, or 5 on even genus and 7/2 on odd genus.
  HalfInt indexBound() const;
  /// tau = 0.5 + 0.8i when nothing is given.
  Lattice lattice() const;
  SurfaceSpec surface() const;

  /// Throws UsageError: tol > 0, depth >= 8, genus >= 0, built-in genus in {0, 1} unless a
  /// basis file is given, range parity matches genus, lattice given one way only.
  void validate() const;
};

/// "0.5+0.8i", "-0.3i", "2", "1e-3-2i", "i". Throws UsageError.
cplx parseComplex(const std::string& text);

/// Reads a JSON config whose keys mirror the long flags (genus, tau, omega1, omega2, z0, q,
/// alpha, beta, range, depth, tol, format, basis-file, out). Complex values may be strings
/// like "0.5+0.8i", [re, im] pairs or plain numbers. Values are applied on top of `base`.
/// Throws UsageError for unknown keys or wrong types.
RunConfig applyConfigFile(const std::filesystem::path& path, RunConfig base = {});
RunConfig applyConfigJson(const std::string& text, RunConfig base = {});

OutputFormat parseFormat(const std::string& text);

/// The basis file when one is configured, otherwise the built-in family with |n| <= bound.
BasisFamily familyFor(const RunConfig& cfg, HalfInt bound);

/// Table metadata from the run configuration and the family actually used.
TableMetadata makeMetadata(const RunConfig& cfg, const BasisFamily& family, std::string kind, bool deformed);

}  // namespace knalg
