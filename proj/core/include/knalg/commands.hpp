#pragma once

#include <string>

#include "knalg/algebra.hpp"
#include "knalg/json_writer.hpp"
#include "knalg/run_config.hpp"
#include "knalg/verify.hpp"

namespace knalg {

/// Process exit codes shared by the CLI and the command functions.
enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2, kExitComputation = 3 };

enum class TableKind { Classical, Q, Heisenberg, QHeisenberg, Central, QCentral };

/// "classical", "q", "heisenberg", "qheisenberg", "central", "qcentral". Throws UsageError.
TableKind parseTableKind(const std::string& text);
std::string tableKindName(TableKind kind);

void writeMetadata(JsonWriter& w, const TableMetadata& meta);

/// {metadata, entries: [{m, n, s, branch, re, im}]}
std::string tableToJson(const StructureTable& table);
/// m,n,s,branch,re,im
std::string tableToCsv(const StructureTable& table);
/// {metadata, entries: [{m, n, re, im}]}
std::string tableToJson(const CentralTable& table);
/// m,n,re,im
std::string tableToCsv(const CentralTable& table);

/// Rendered output and the exit code the process should return.
struct CommandResult {
  std::string output;
  int exitCode = kExitOk;
};

CommandResult cmdTable(const RunConfig& cfg, TableKind kind);
CommandResult cmdVerify(const RunConfig& cfg, Suite suite);
/// Coefficients of the built-in family with |n| <= range, as a loadable basis file (json)
/// or as rows n,field,point,k,re,im (csv).
CommandResult cmdExpandBasis(const RunConfig& cfg);

}  // namespace knalg
