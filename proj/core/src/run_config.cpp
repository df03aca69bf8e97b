#include "knalg/run_config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "knalg/error.hpp"

namespace knalg {

HalfInt RunConfig::indexBound() const {
  if (range) return *range;
  return genus % 2 == 0 ? HalfInt(5) : HalfInt::fromTwice(7);
}

Lattice RunConfig::lattice() const {
  try {
    if (omega1 || omega2) return Lattice(omega1.value_or(1.0), omega2.value_or(kDefaultTau));
    return Lattice::fromTau(tau.value_or(kDefaultTau));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

SurfaceSpec RunConfig::surface() const {
  if (genus == 1) return SurfaceSpec::torus(lattice(), z0);
  SurfaceSpec s;
  s.genus = genus;
  s.z0 = z0;
  return s;
}

void RunConfig::validate() const {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw UsageError(fmt::format("--tol must be positive, got {}", tol));
  if (depth < 8) throw UsageError(fmt::format("--depth must be at least 8, got {}", depth));
  if (genus < 0) throw UsageError(fmt::format("--genus must be non-negative, got {}", genus));
  if (!basisFile && genus > 1) {
    throw UsageError(fmt::format("genus {} has no built-in basis; pass --basis-file", genus));
  }
  if (tau && (omega1 || omega2)) throw UsageError("give the lattice as --tau or as --omega1/--omega2, not both");
  const HalfInt bound = indexBound();
  if (bound.twice() < 0) throw UsageError(fmt::format("--range must be non-negative, got {}", bound.str()));
  if (bound.isInteger() != (genus % 2 == 0)) {
    throw UsageError(fmt::format("--range {} has the wrong parity for genus {} ({} indices)", bound.str(), genus,
                                 genus % 2 == 0 ? "integral" : "half-odd-integral"));
  }
  if (!(params.q > 0.0) || !std::isfinite(params.q)) {
    throw UsageError(fmt::format("--q must be positive, got {}", params.q));
  }
  if (!std::isfinite(params.alpha) || !std::isfinite(params.beta)) throw UsageError("--alpha/--beta must be finite");
  if (genus == 1) {
    lattice();  // rejects Im(tau) <= 0
  }
}

cplx parseComplex(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  static const std::regex full(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)[ij])?$)");
  static const std::regex imagOnly(R"(^([+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)[ij]$)");
  std::smatch m;
  auto coefficient = [](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return std::stod(part);
  };
  if (!s.empty() && std::regex_match(s, m, imagOnly)) return {0.0, coefficient(m[1].str())};
  if (!s.empty() && std::regex_match(s, m, full) && (m[1].matched || m[2].matched)) {
    const double re = m[1].matched ? std::stod(m[1].str()) : 0.0;
    const double im = m[2].matched ? coefficient(m[2].str()) : 0.0;
    return {re, im};
  }
  throw UsageError(fmt::format("cannot parse complex number '{}' (expected e.g. 0.5+0.8i)", text));
}

OutputFormat parseFormat(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  throw UsageError(fmt::format("unknown format '{}' (expected json or csv)", text));
}

namespace {

using nlohmann::json;

cplx complexField(const json& v, const std::string& key) {
  if (v.is_string()) return parseComplex(v.get<std::string>());
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw UsageError(fmt::format("config: '{}' must be a complex number", key));
}

double realField(const json& v, const std::string& key) {
  if (!v.is_number()) throw UsageError(fmt::format("config: '{}' must be a number", key));
  return v.get<double>();
}

int intField(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw UsageError(fmt::format("config: '{}' must be an integer", key));
  return v.get<int>();
}

std::string stringField(const json& v, const std::string& key) {
  if (!v.is_string()) throw UsageError(fmt::format("config: '{}' must be a string", key));
  return v.get<std::string>();
}

}  // namespace

RunConfig applyConfigJson(const std::string& text, RunConfig cfg) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw UsageError("config: top level must be an object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "genus") {
      cfg.genus = intField(v, key);
    } else if (key == "tau") {
      cfg.tau = complexField(v, key);
    } else if (key == "omega1") {
      cfg.omega1 = complexField(v, key);
    } else if (key == "omega2") {
      cfg.omega2 = complexField(v, key);
    } else if (key == "z0") {
      cfg.z0 = complexField(v, key);
    } else if (key == "q") {
      cfg.params.q = realField(v, key);
    } else if (key == "alpha") {
      cfg.params.alpha = realField(v, key);
    } else if (key == "beta") {
      cfg.params.beta = realField(v, key);
    } else if (key == "range") {
      try {
        cfg.range = v.is_string() ? HalfInt::parse(v.get<std::string>()) : HalfInt::fromDouble(realField(v, key));
      } catch (const DomainError& e) {
        throw UsageError(fmt::format("config: range: {}", e.what()));
      }
    } else if (key == "depth") {
      cfg.depth = intField(v, key);
    } else if (key == "tol") {
      cfg.tol = realField(v, key);
    } else if (key == "format") {
      cfg.format = parseFormat(stringField(v, key));
    } else if (key == "basis-file" || key == "basisFile") {
      cfg.basisFile = stringField(v, key);
    } else if (key == "out") {
      cfg.out = stringField(v, key);
    } else {
      throw UsageError(fmt::format("config: unknown key '{}'", key));
    }
  }
  return cfg;
}

BasisFamily familyFor(const RunConfig& cfg, HalfInt bound) {
  const Tolerance tol(cfg.tol);
  if (cfg.basisFile) return loadBasisFile(*cfg.basisFile, tol);
  return buildFamily(cfg.surface(), IndexSet::symmetric(bound, cfg.genus), cfg.depth, tol);
}

TableMetadata makeMetadata(const RunConfig& cfg, const BasisFamily& family, std::string kind, bool deformed) {
  TableMetadata meta;
  meta.kind = std::move(kind);
  meta.genus = family.genus();
  meta.g0 = family.g0();
  meta.range = cfg.indexBound();
  meta.depth = family.info().depth;
  meta.tol = cfg.tol;
  if (deformed) {
    meta.q = cfg.params.q;
    meta.alpha = cfg.params.alpha;
    meta.beta = cfg.params.beta;
  }
  meta.omega1 = family.info().omega1;
  meta.omega2 = family.info().omega2;
  meta.z0 = family.info().z0;
  meta.basisSource = family.info().source;
  meta.aNormalization = family.info().aNormalization;
  return meta;
}

RunConfig applyConfigFile(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(fmt::format("cannot open config file '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return applyConfigJson(buffer.str(), std::move(base));
}

}  // namespace knalg
