// CSV / JSON serialization of sweep results.
#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "csf/benchmarks.hpp"

namespace csf {

inline constexpr const char* kToolVersion = "0.3.0";

/// Fixed report column order.
const std::vector<std::string>& report_columns();
/// Columns excluded from determinism comparisons.
bool is_timing_column(const std::string& name);

std::vector<std::string> row_cells(const ReportRow& row);
ReportRow row_from_cells(const std::vector<std::string>& cells);

/// RFC 4180 quoting: fields containing a comma, quote, CR or LF are quoted
/// and embedded quotes doubled.
std::string csv_escape(const std::string& field);
std::string csv_line(const std::vector<std::string>& fields);
/// Parses a whole CSV document (quoted fields may span lines).
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);
std::string report_csv(const std::vector<ReportRow>& rows);
/// CSV text with the timing columns blanked.
std::string report_csv_without_timing(const std::vector<ReportRow>& rows);
std::vector<ReportRow> read_report_csv(const std::filesystem::path& file);

/// Row <-> JSON (doubles stored as round-trip strings so NaN survives).
nlohmann::json row_to_json(const ReportRow& row);
ReportRow row_from_json(const nlohmann::json& j);

void write_field_csv(const std::filesystem::path& file, const FieldDump& dump);

/// Creates `dir` if needed and probes that files can be written into it.
/// Throws InvalidInput otherwise.
void ensure_writable_directory(const std::filesystem::path& dir);

std::string iso_timestamp(std::chrono::system_clock::time_point t);

struct ReportMeta {
  nlohmann::json config;
  std::chrono::system_clock::time_point start;
  std::chrono::system_clock::time_point end;
  std::vector<std::string> notes;
};

/// Writes report.csv, meta.json and fields/<row>.csv for rows that carry a
/// field dump (`fields[i]` belongs to `rows[i]`; it may be shorter).
void write_report(const std::filesystem::path& dir, const std::vector<ReportRow>& rows,
                  const ReportMeta& meta, const std::vector<std::optional<FieldDump>>& fields = {});

}  // namespace csf
