// knalg: tables, verification suites and basis expansions from the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "knalg/commands.hpp"
#include "knalg/error.hpp"

namespace {

using namespace knalg;

/// Raw flag values; applied on top of the config file only when given.
struct Flags {
  std::string config;
  int genus = 0;
  std::string tau, omega1, omega2, z0, range, format, basisFile, out;
  double q = 0.0, alpha = 0.0, beta = 0.0, tol = 0.0;
  int depth = 0;
};

RunConfig resolve(const CLI::App& app, const Flags& f) {
  RunConfig cfg;
  if (app.count("--config")) cfg = applyConfigFile(f.config, cfg);
  auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("--genus")) cfg.genus = f.genus;
  if (given("--tau")) cfg.tau = parseComplex(f.tau);
  if (given("--omega1")) cfg.omega1 = parseComplex(f.omega1);
  if (given("--omega2")) cfg.omega2 = parseComplex(f.omega2);
  if (given("--z0")) cfg.z0 = parseComplex(f.z0);
  if (given("--q")) cfg.params.q = f.q;
  if (given("--alpha")) cfg.params.alpha = f.alpha;
  if (given("--beta")) cfg.params.beta = f.beta;
  if (given("--range")) {
    try {
      cfg.range = HalfInt::parse(f.range);
    } catch (const DomainError& e) {
      throw UsageError(fmt::format("--range: {}", e.what()));
    }
  }
  if (given("--depth")) cfg.depth = f.depth;
  if (given("--tol")) cfg.tol = f.tol;
  if (given("--format")) cfg.format = parseFormat(f.format);
  if (given("--basis-file")) cfg.basisFile = f.basisFile;
  if (given("--out")) cfg.out = f.out;
  return cfg;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (!cfg.out) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream file(*cfg.out, std::ios::binary);
  if (!file) throw UsageError(fmt::format("cannot write '{}'", cfg.out->string()));
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure constants, central terms and checks for Krichever-Novikov type algebras"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Flags f;
  app.add_option("--config", f.config, "JSON file with defaults; explicit flags override it");
  app.add_option("--genus", f.genus, "0 (sphere) or 1 (torus); higher genus needs --basis-file");
  app.add_option("--tau", f.tau, "Torus period ratio with omega1 = 1 (default 0.5+0.8i)");
  app.add_option("--omega1", f.omega1, "First lattice period");
  app.add_option("--omega2", f.omega2, "Second lattice period");
  app.add_option("--z0", f.z0, "Torus marked point, P+ = z0 and P- = -z0 (default 0.17+0.11i)");
  app.add_option("--q", f.q, "Deformation parameter, q > 0 (default 1.5)");
  app.add_option("--alpha", f.alpha, "OPE label alpha (default 1)");
  app.add_option("--beta", f.beta, "OPE label beta (default 0.5)");
  app.add_option("--range", f.range, "Index bound |m|, |n| <= range (default 5 on the sphere, 7/2 on the torus)");
  app.add_option("--depth", f.depth, "Laurent truncation depth (default 48)");
  app.add_option("--tol", f.tol, "Tolerance for validation and checks (default 1e-9)");
  app.add_option("--format", f.format, "json or csv (default json)");
  app.add_option("--basis-file", f.basisFile, "Load the basis family from a JSON file");
  app.add_option("--out", f.out, "Write output to this file instead of stdout");

  std::string tableKind, suite;
  CLI::App* table = app.add_subcommand("table", "Print a structure-constant or central-term table");
  table->add_option("kind", tableKind, "classical | q | heisenberg | qheisenberg | central | qcentral")->required();
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite; exit 1 if any check fails");
  verify->add_option("suite", suite, "duality | antisymmetry | band | limits | cocycle | jacobi | all")->required();
  CLI::App* expand = app.add_subcommand("expand-basis", "Print the Laurent coefficients of the basis family");
  for (CLI::App* sub : {table, verify, expand}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const RunConfig cfg = resolve(app, f);
    CommandResult result;
    if (*table) {
      result = cmdTable(cfg, parseTableKind(tableKind));
    } else if (*verify) {
      result = cmdVerify(cfg, parseSuite(suite));
    } else {
      result = cmdExpandBasis(cfg);
    }
    emit(cfg, result.output);
    return result.exitCode;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  }
}
