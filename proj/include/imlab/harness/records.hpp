#pragma once

// Experiment rows, their CSV form and the JSON summary.
//
// CSV: RFC-4180 quoting, UTF-8, header row, fixed column order. The first
// two columns are always `config_hash` and `schema_version`; doubles are
// written with %.17g so a re-run reproduces the file byte for byte.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace imlab::harness {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Schema {
  std::string experiment;
  int version = 1;
  std::vector<std::string> columns;
};

/// One row; cells follow the schema's column order.
struct ExperimentRecord {
  std::vector<Cell> cells;
};

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentResult {
  Schema schema;
  std::vector<ExperimentRecord> records;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<Assertion> assertions;
  double wall_seconds = 0.0;

  bool all_passed() const;
};

std::string format_cell(const Cell& c);

/// Quotes a field when it holds a comma, quote, CR or LF.
std::string csv_escape(const std::string& field);

void write_csv(std::ostream& os, const Schema& schema, const std::vector<ExperimentRecord>& records,
               const std::string& config_hash);

/// Parsed CSV: header plus string fields, quoting undone.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(std::istream& is);
CsvTable read_csv(const std::filesystem::path& path);

enum class EmitMode { overwrite, append };

struct EmitPaths {
  std::filesystem::path csv;
  std::filesystem::path summary;
};

/// Writes `<out_dir>/<experiment>.csv` and `<out_dir>/<experiment>.summary.json`.
/// Refuses an empty record list before touching the filesystem. In append
/// mode an existing CSV must carry the same header and config hash.
EmitPaths emit(const ExperimentResult& result, const std::string& config_hash,
               const std::vector<std::uint64_t>& seeds, const std::filesystem::path& out_dir,
               EmitMode mode = EmitMode::overwrite);

}  // namespace imlab::harness
