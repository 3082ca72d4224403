#include "imlab/harness/records.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "imlab/errors.hpp"

namespace imlab::harness {

bool ExperimentResult::all_passed() const {
  for (const auto& a : assertions)
    if (!a.passed) return false;
  return true;
}

std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isnan(*d)) return "nan";
    if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  return std::get<std::string>(c);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

namespace {

std::string header_line(const Schema& schema) {
  std::string line = "config_hash,schema_version";
  for (const auto& c : schema.columns) line += "," + csv_escape(c);
  return line;
}

void write_rows(std::ostream& os, const Schema& schema, const std::vector<ExperimentRecord>& records,
                const std::string& config_hash) {
  for (const auto& r : records) {
    if (r.cells.size() != schema.columns.size())
      throw Error("record has " + std::to_string(r.cells.size()) + " cells, schema '" + schema.experiment +
                  "' expects " + std::to_string(schema.columns.size()));
    os << csv_escape(config_hash) << ',' << schema.version;
    for (const auto& c : r.cells) os << ',' << csv_escape(format_cell(c));
    os << "\r\n";
  }
}

}  // namespace

void write_csv(std::ostream& os, const Schema& schema, const std::vector<ExperimentRecord>& records,
               const std::string& config_hash) {
  os << header_line(schema) << "\r\n";
  write_rows(os, schema, records, config_hash);
}

CsvTable read_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  char ch;
  auto end_field = [&] {
    row.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };
  while (is.get(ch)) {
    if (in_quotes) {
      if (ch == '"') {
        if (is.peek() == '"') {
          is.get(ch);
          field += '"';
        } else {
          in_quotes = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    if (ch == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (ch == ',') {
      end_field();
    } else if (ch == '\r') {
      if (is.peek() == '\n') is.get(ch);
      end_row();
    } else if (ch == '\n') {
      end_row();
    } else {
      field += ch;
      field_started = true;
    }
  }
  if (in_quotes) throw IoError("unterminated quoted CSV field");
  if (field_started || !row.empty()) end_row();

  CsvTable table;
  if (rows.empty()) return table;
  table.header = std::move(rows.front());
  table.rows.assign(std::make_move_iterator(rows.begin() + 1), std::make_move_iterator(rows.end()));
  for (const auto& r : table.rows)
    if (r.size() != table.header.size()) throw IoError("CSV row width differs from header");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return read_csv(in);
}

EmitPaths emit(const ExperimentResult& result, const std::string& config_hash,
               const std::vector<std::uint64_t>& seeds, const std::filesystem::path& out_dir, EmitMode mode) {
  if (result.records.empty())
    throw Error("refusing to emit experiment '" + result.schema.experiment + "': no records");

  EmitPaths paths{out_dir / (result.schema.experiment + ".csv"),
                  out_dir / (result.schema.experiment + ".summary.json")};
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  const bool appending = mode == EmitMode::append && std::filesystem::exists(paths.csv);
  if (appending) {
    const CsvTable existing = read_csv(paths.csv);
    std::vector<std::string> expected{"config_hash", "schema_version"};
    expected.insert(expected.end(), result.schema.columns.begin(), result.schema.columns.end());
    if (existing.header != expected)
      throw IoError(paths.csv.string() + ": schema mismatch, refusing to append");
    for (const auto& r : existing.rows) {
      if (r[0] != config_hash)
        throw IoError(paths.csv.string() + ": holds records of config " + r[0] + ", refusing to append " +
                      config_hash);
      if (r[1] != std::to_string(result.schema.version))
        throw IoError(paths.csv.string() + ": schema version mismatch, refusing to append");
    }
  }

  {
    std::ofstream os(paths.csv, appending ? std::ios::binary | std::ios::app : std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot write " + paths.csv.string());
    if (appending)
      write_rows(os, result.schema, result.records, config_hash);
    else
      write_csv(os, result.schema, result.records, config_hash);
    if (!os) throw IoError("write failed for " + paths.csv.string());
  }

  nlohmann::ordered_json j;
  j["experiment"] = result.schema.experiment;
  j["schema_version"] = result.schema.version;
  j["config_hash"] = config_hash;
  j["seeds"] = seeds;
  j["rows"] = result.records.size();
  j["summary"] = result.summary;
  auto& arr = j["assertions"] = nlohmann::ordered_json::array();
  for (const auto& a : result.assertions)
    arr.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
  j["all_passed"] = result.all_passed();
  j["wall_seconds"] = result.wall_seconds;
  std::ofstream js(paths.summary, std::ios::binary | std::ios::trunc);
  if (!js) throw IoError("cannot write " + paths.summary.string());
  js << j.dump(2) << "\n";
  if (!js) throw IoError("write failed for " + paths.summary.string());
  return paths;
}

}  // namespace imlab::harness
