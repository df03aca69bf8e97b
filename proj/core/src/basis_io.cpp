#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "knalg/basis.hpp"
#include "knalg/error.hpp"
#include "knalg/json_writer.hpp"

namespace knalg {

namespace {

using nlohmann::json;

void writeOptionalComplex(JsonWriter& w, const char* name, const std::optional<cplx>& v) {
  if (v) w.key(name).complex(*v);
}

const json& require(const json& obj, const char* field, const std::string& where) {
  if (!obj.is_object() || !obj.contains(field)) {
    throw SchemaError(fmt::format("basis file: {} is missing field '{}'", where, field));
  }
  return obj.at(field);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw SchemaError(fmt::format("basis file: {} must be a number", where));
  return v.get<double>();
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw SchemaError(fmt::format("basis file: {} must be an integer", where));
  return v.get<int>();
}

cplx complexValue(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) {
    throw SchemaError(fmt::format("basis file: {} must be a [re, im] pair", where));
  }
  return {number(v[0], where + "[0]"), number(v[1], where + "[1]")};
}

LaurentSeries parseSeries(const json& v, const std::string& where) {
  const int minExp = integer(require(v, "minExp", where), where + ".minExp");
  const int truncOrder = integer(require(v, "truncOrder", where), where + ".truncOrder");
  const json& coeffs = require(v, "coeffs", where);
  if (!coeffs.is_array()) throw SchemaError(fmt::format("basis file: {}.coeffs must be an array", where));
  if (truncOrder < minExp || static_cast<std::size_t>(truncOrder - minExp) != coeffs.size()) {
    throw SchemaError(fmt::format("basis file: {} has {} coefficients but window [{}, {})", where, coeffs.size(),
                                  minExp, truncOrder));
  }
  std::vector<cplx> out;
  out.reserve(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    out.push_back(complexValue(coeffs[i], fmt::format("{}.coeffs[{}]", where, i)));
  }
  return LaurentSeries(minExp, std::move(out));
}

std::optional<LaurentSeries> parseOptionalSeries(const json& obj, const char* field, const std::string& where) {
  if (!obj.contains(field)) return std::nullopt;
  return parseSeries(obj.at(field), where + "." + field);
}

HalfInt parseIndex(const std::string& text) {
  try {
    return HalfInt::parse(text);
  } catch (const Error&) {
    throw SchemaError(fmt::format("basis file: element key '{}' is not a half-integer", text));
  }
}

}  // namespace

std::string basisToJson(const BasisFamily& family) {
  JsonWriter w;
  w.beginObject();
  w.key("genus").value(family.genus());
  w.key("g0").value(family.g0().value());
  w.key("indices").beginArray(true);
  for (HalfInt n : family.indices()) w.value(n.value());
  w.endArray();
  w.key("elements").beginObject();
  for (const auto& [n, el] : family.elements()) {
    w.key(n.str()).beginObject();
    w.key("e").series(el.e);
    w.key("omega").series(el.omega);
    w.key("a").series(el.a);
    if (el.eMinus) w.key("eMinus").series(*el.eMinus);
    if (el.omegaMinus) w.key("omegaMinus").series(*el.omegaMinus);
    if (el.aMinus) w.key("aMinus").series(*el.aMinus);
    w.endObject();
  }
  w.endObject();
  const FamilyInfo& info = family.info();
  w.key("metadata").beginObject();
  w.key("source").value(info.source);
  w.key("depth").value(info.depth);
  writeOptionalComplex(w, "omega1", info.omega1);
  writeOptionalComplex(w, "omega2", info.omega2);
  writeOptionalComplex(w, "z0", info.z0);
  w.key("aNormalization").value(info.aNormalization);
  w.endObject();
  w.endObject();
  return w.str();
}

BasisFamily basisFromJson(const std::string& text, Tolerance tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(fmt::format("basis file is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw SchemaError("basis file: top level must be an object");

  const int genus = integer(require(doc, "genus", "top level"), "genus");
  if (genus < 0) throw SchemaError(fmt::format("basis file: genus must be non-negative, got {}", genus));
  if (doc.contains("g0")) {
    const double g0 = number(doc.at("g0"), "g0");
    if (g0 != 1.5 * genus) {
      throw SchemaError(fmt::format("basis file: g0 = {} contradicts genus {} (expected {})", g0, genus, 1.5 * genus));
    }
  }

  const json& elementsJson = require(doc, "elements", "top level");
  if (!elementsJson.is_object() || elementsJson.empty()) {
    throw SchemaError("basis file: 'elements' must be a non-empty object");
  }
  std::map<HalfInt, BasisElement> elements;
  for (const auto& [key, value] : elementsJson.items()) {
    const HalfInt n = parseIndex(key);
    const std::string where = fmt::format("elements[{}]", key);
    BasisElement el{parseSeries(require(value, "e", where), where + ".e"),
                    parseSeries(require(value, "omega", where), where + ".omega"),
                    parseSeries(require(value, "a", where), where + ".a"),
                    parseOptionalSeries(value, "eMinus", where),
                    parseOptionalSeries(value, "omegaMinus", where),
                    parseOptionalSeries(value, "aMinus", where)};
    if (!elements.emplace(n, std::move(el)).second) {
      throw SchemaError(fmt::format("basis file: index {} appears twice", n.str()));
    }
  }

  if (doc.contains("indices")) {
    const json& list = doc.at("indices");
    if (!list.is_array()) throw SchemaError("basis file: 'indices' must be an array");
    if (list.size() != elements.size()) {
      throw SchemaError(fmt::format("basis file: {} indices listed but {} elements stored", list.size(),
                                    elements.size()));
    }
    for (const json& entry : list) {
      HalfInt n;
      try {
        n = HalfInt::fromDouble(number(entry, "indices[]"));
      } catch (const DomainError&) {
        throw SchemaError(fmt::format("basis file: index {} is not a half-integer", entry.dump()));
      }
      if (!elements.count(n)) {
        throw SchemaError(fmt::format("basis file: index {} is listed but has no element", n.str()));
      }
    }
  }

  FamilyInfo info;
  info.source = "file";
  if (doc.contains("metadata") && doc.at("metadata").is_object()) {
    const json& meta = doc.at("metadata");
    if (meta.contains("depth")) info.depth = integer(meta.at("depth"), "metadata.depth");
    if (meta.contains("omega1")) info.omega1 = complexValue(meta.at("omega1"), "metadata.omega1");
    if (meta.contains("omega2")) info.omega2 = complexValue(meta.at("omega2"), "metadata.omega2");
    if (meta.contains("z0")) info.z0 = complexValue(meta.at("z0"), "metadata.z0");
    if (meta.contains("aNormalization") && meta.at("aNormalization").is_string()) {
      info.aNormalization = meta.at("aNormalization").get<std::string>();
    }
  }

  BasisFamily family(genus, std::move(elements), std::move(info));
  for (HalfInt n : family.indices()) {
    const bool integral = n.isInteger();
    if (integral != (genus % 2 == 0)) {
      throw BasisError(fmt::format("index {} has the wrong parity for genus {}", n.str(), genus));
    }
  }
  validateFamily(family, tol);
  return family;
}

void saveBasisFile(const BasisFamily& family, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
  out << basisToJson(family);
  if (!out) throw Error(fmt::format("failed writing '{}'", path.string()));
}

BasisFamily loadBasisFile(const std::filesystem::path& path, Tolerance tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(fmt::format("cannot open basis file '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return basisFromJson(buffer.str(), tol);
}

}  // namespace knalg
