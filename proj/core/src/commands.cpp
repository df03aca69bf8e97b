#include "knalg/commands.hpp"

#include <map>

#include <fmt/format.h>

#include "knalg/error.hpp"
#include "knalg/verify.hpp"

namespace knalg {

TableKind parseTableKind(const std::string& text) {
  static const std::map<std::string, TableKind> names{
      {"classical", TableKind::Classical},     {"q", TableKind::Q},
      {"heisenberg", TableKind::Heisenberg},   {"qheisenberg", TableKind::QHeisenberg},
      {"central", TableKind::Central},         {"qcentral", TableKind::QCentral}};
  const auto it = names.find(text);
  if (it == names.end()) {
    throw UsageError(
        fmt::format("unknown table kind '{}' (classical, q, heisenberg, qheisenberg, central, qcentral)", text));
  }
  return it->second;
}

std::string tableKindName(TableKind kind) {
  switch (kind) {
    case TableKind::Classical: return "classical";
    case TableKind::Q: return "q";
    case TableKind::Heisenberg: return "heisenberg";
    case TableKind::QHeisenberg: return "qheisenberg";
    case TableKind::Central: return "central";
    case TableKind::QCentral: return "qcentral";
  }
  return "unknown";
}

void writeMetadata(JsonWriter& w, const TableMetadata& meta) {
  w.beginObject();
  w.key("kind").value(meta.kind);
  w.key("genus").value(meta.genus);
  w.key("g0").value(meta.g0.value());
  w.key("range").value(meta.range.value());
  w.key("depth").value(meta.depth);
  w.key("tol").value(meta.tol);
  if (meta.q) w.key("q").value(*meta.q);
  if (meta.alpha) w.key("alpha").value(*meta.alpha);
  if (meta.beta) w.key("beta").value(*meta.beta);
  if (meta.omega1) w.key("omega1").complex(*meta.omega1);
  if (meta.omega2) w.key("omega2").complex(*meta.omega2);
  if (meta.z0) w.key("z0").complex(*meta.z0);
  w.key("basisSource").value(meta.basisSource);
  w.key("aNormalization").value(meta.aNormalization);
  w.endObject();
}

std::string tableToJson(const StructureTable& table) {
  JsonWriter w;
  w.beginObject();
  w.key("metadata");
  writeMetadata(w, table.metadata);
  w.key("entries").beginArray();
  for (const StructureEntry& e : table.entries) {
    w.beginObject(true);
    w.key("m").value(e.m.value());
    w.key("n").value(e.n.value());
    w.key("s").value(e.s.value());
    w.key("branch").value(e.branch);
    w.key("re").value(e.value.real());
    w.key("im").value(e.value.imag());
    w.endObject();
  }
  w.endArray();
  w.endObject();
  return w.str() + "\n";
}

std::string tableToCsv(const StructureTable& table) {
  std::string out = "m,n,s,branch,re,im\n";
  for (const StructureEntry& e : table.entries) {
    out += fmt::format("{},{},{},{},{},{}\n", e.m.str(), e.n.str(), e.s.str(), e.branch,
                       formatDouble(e.value.real()), formatDouble(e.value.imag()));
  }
  return out;
}

std::string tableToJson(const CentralTable& table) {
  JsonWriter w;
  w.beginObject();
  w.key("metadata");
  writeMetadata(w, table.metadata);
  w.key("entries").beginArray();
  for (const CentralEntry& e : table.entries) {
    w.beginObject(true);
    w.key("m").value(e.m.value());
    w.key("n").value(e.n.value());
    w.key("re").value(e.value.real());
    w.key("im").value(e.value.imag());
    w.endObject();
  }
  w.endArray();
  w.endObject();
  return w.str() + "\n";
}

std::string tableToCsv(const CentralTable& table) {
  std::string out = "m,n,re,im\n";
  for (const CentralEntry& e : table.entries) {
    out += fmt::format("{},{},{},{}\n", e.m.str(), e.n.str(), formatDouble(e.value.real()),
                       formatDouble(e.value.imag()));
  }
  return out;
}

namespace {

template <typename Table>
std::string render(const RunConfig& cfg, const Table& table) {
  return cfg.format == OutputFormat::Json ? tableToJson(table) : tableToCsv(table);
}

std::string basisToCsv(const BasisFamily& family) {
  std::string out = "n,field,point,k,re,im\n";
  auto rows = [&](HalfInt n, const char* field, const char* point, const LaurentSeries& s) {
    for (int k = s.minExp(); k < s.truncOrder(); ++k) {
      const cplx c = s.coefficient(k);
      out += fmt::format("{},{},{},{},{},{}\n", n.str(), field, point, k, formatDouble(c.real()),
                         formatDouble(c.imag()));
    }
  };
  for (const auto& [n, el] : family.elements()) {
    rows(n, "e", "plus", el.e);
    rows(n, "omega", "plus", el.omega);
    rows(n, "a", "plus", el.a);
    if (el.eMinus) rows(n, "e", "minus", *el.eMinus);
    if (el.omegaMinus) rows(n, "omega", "minus", *el.omegaMinus);
    if (el.aMinus) rows(n, "a", "minus", *el.aMinus);
  }
  return out;
}

}  // namespace

CommandResult cmdTable(const RunConfig& cfg, TableKind kind) {
  cfg.validate();
  const HalfInt bound = cfg.indexBound();
  const std::string name = tableKindName(kind);
  const bool needsQ = kind == TableKind::Q || kind == TableKind::QCentral || kind == TableKind::QHeisenberg;
  if (needsQ && cfg.params.q == 1.0) throw UsageError(fmt::format("table {} needs --q != 1", name));
  if (kind == TableKind::Classical || kind == TableKind::Q) {
    const HalfInt g0 = HalfInt::fromTwice(3 * cfg.genus);
    const BasisFamily family = familyFor(cfg, bound + bound + g0);
    const bool deformed = kind == TableKind::Q;
    TableMetadata meta = makeMetadata(cfg, family, name, deformed);
    const StructureTable table = deformed ? buildQTable(family, bound, cfg.params, std::move(meta))
                                          : buildClassicalTable(family, bound, std::move(meta));
    return {render(cfg, table), kExitOk};
  }
  static const std::map<TableKind, CentralKind> central{{TableKind::Central, CentralKind::Cocycle},
                                                        {TableKind::QCentral, CentralKind::QCentral},
                                                        {TableKind::Heisenberg, CentralKind::Heisenberg},
                                                        {TableKind::QHeisenberg, CentralKind::QHeisenberg}};
  const CentralKind ck = central.at(kind);
  const bool deformed = ck == CentralKind::QCentral || ck == CentralKind::QHeisenberg;
  const BasisFamily family = familyFor(cfg, bound);
  const CentralTable table =
      buildCentralTable(family, bound, ck, cfg.params, makeMetadata(cfg, family, name, deformed));
  return {render(cfg, table), kExitOk};
}

CommandResult cmdVerify(const RunConfig& cfg, Suite suite) {
  const VerificationReport report = runVerification(cfg, suite);
  std::string out = cfg.format == OutputFormat::Json ? reportToJson(report) + "\n" : reportToCsv(report);
  return {std::move(out), report.passed() ? kExitOk : kExitVerifyFailed};
}

CommandResult cmdExpandBasis(const RunConfig& cfg) {
  cfg.validate();
  const BasisFamily family = familyFor(cfg, cfg.indexBound());
  if (cfg.format == OutputFormat::Csv) return {basisToCsv(family), kExitOk};
  return {basisToJson(family) + "\n", kExitOk};
}

}  // namespace knalg
