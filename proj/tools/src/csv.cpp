#include "nhsense/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace nhsense::cli {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string format_cell(const Cell& cell) {
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&cell)) return quote(*s);
  const double v = std::get<double>(cell);
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(const Dataset& data, std::ostream& out) {
  for (std::size_t i = 0; i < data.columns.size(); ++i) out << (i ? "," : "") << quote(data.columns[i]);
  out << '\n';
  for (const auto& row : data.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

std::string metadata_json(const Dataset& data, const RunConfig& config) {
  nlohmann::ordered_json meta;
  meta["task"] = task_name(config.task);
  nlohmann::ordered_json resolved;
  for (const auto& [key, value] : config.resolved()) resolved[key] = value;
  meta["config"] = resolved;
  meta["columns"] = data.columns;
  meta["rows"] = data.rows.size();
  meta["failed_rows"] = data.failures();
  meta["float_format"] = "17 significant digits";
  return meta.dump(2) + "\n";
}

void emit_csv(const Dataset& data, const RunConfig& config, const std::string& path) {
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot open '" + path + "' for writing");
    write_csv(data, out);
    if (!out.flush()) throw OutputError("write to '" + path + "' failed");
  }
  const std::string sidecar = path + ".json";
  std::ofstream meta(sidecar, std::ios::binary | std::ios::trunc);
  if (!meta) throw OutputError("cannot open '" + sidecar + "' for writing");
  meta << metadata_json(data, config);
  if (!meta.flush()) throw OutputError("write to '" + sidecar + "' failed");
}

}  // namespace nhsense::cli
