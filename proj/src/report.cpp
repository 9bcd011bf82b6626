#include "csf/report.hpp"

#include <ctime>
#include <fstream>
#include <sstream>

#include "csf/format.hpp"

namespace csf {

namespace {

using Json = nlohmann::json;

// Column accessors in report order. Numbers go through format_double so the
// CSV re-parses to identical values.
struct Column {
  const char* name;
  std::string (*get)(const ReportRow&);
  void (*set)(ReportRow&, const std::string&);
};

#define CSF_STR_COLUMN(field)                                            \
  Column {                                                               \
    #field, [](const ReportRow& r) { return r.field; },                  \
        [](ReportRow& r, const std::string& v) { r.field = v; }          \
  }
#define CSF_NUM_COLUMN(field)                                                       \
  Column {                                                                          \
    #field, [](const ReportRow& r) { return format_double(r.field); },              \
        [](ReportRow& r, const std::string& v) { r.field = parse_double(v); }       \
  }
#define CSF_INT_COLUMN(field, type)                                                  \
  Column {                                                                           \
    #field, [](const ReportRow& r) { return std::to_string(r.field); },              \
        [](ReportRow& r, const std::string& v) {                                     \
          r.field = static_cast<type>(std::stoll(v));                                \
        }                                                                            \
  }

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      CSF_STR_COLUMN(benchmark),
      CSF_STR_COLUMN(delta_case),
      CSF_STR_COLUMN(method),
      CSF_STR_COLUMN(mode),
      CSF_NUM_COLUMN(eps),
      CSF_INT_COLUMN(n_i, int),
      CSF_NUM_COLUMN(h),
      CSF_INT_COLUMN(n_elements, std::size_t),
      CSF_NUM_COLUMN(l2_error),
      CSF_NUM_COLUMN(recoil),
      CSF_NUM_COLUMN(recoil_reference),
      CSF_NUM_COLUMN(recoil_error),
      CSF_NUM_COLUMN(interface_temperature),
      CSF_NUM_COLUMN(reference_interface_temperature),
      CSF_NUM_COLUMN(peak_temperature),
      CSF_NUM_COLUMN(peak_x),
      CSF_NUM_COLUMN(peak_y),
      CSF_NUM_COLUMN(peak_distance),
      CSF_NUM_COLUMN(gas_peclet),
      CSF_NUM_COLUMN(fitted_order),
      CSF_NUM_COLUMN(fitted_order_recoil),
      CSF_INT_COLUMN(steps, std::size_t),
      CSF_NUM_COLUMN(wall_seconds),
      CSF_STR_COLUMN(status),
      CSF_STR_COLUMN(message),
      CSF_STR_COLUMN(key),
  };
  return cols;
}

#undef CSF_STR_COLUMN
#undef CSF_NUM_COLUMN
#undef CSF_INT_COLUMN

}  // namespace

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const Column& c : columns()) n.emplace_back(c.name);
    return n;
  }();
  return names;
}

bool is_timing_column(const std::string& name) { return name == "wall_seconds"; }

std::vector<std::string> row_cells(const ReportRow& row) {
  std::vector<std::string> out;
  for (const Column& c : columns()) out.push_back(c.get(row));
  return out;
}

ReportRow row_from_cells(const std::vector<std::string>& cells) {
  const auto& cols = columns();
  if (cells.size() != cols.size()) {
    throw InvalidInput("report row has " + std::to_string(cells.size()) + " fields, expected " +
                       std::to_string(cols.size()));
  }
  ReportRow row;
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i].set(row, cells[i]);
  return row;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += csv_escape(fields[i]);
  }
  out += "\r\n";
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;  // current record has content
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field.push_back(c);
      any = true;
    }
  }
  if (quoted) throw InvalidInput("unterminated quoted CSV field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << csv_line(report_columns());
  for (const ReportRow& r : rows) out << csv_line(row_cells(r));
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream s;
  write_report_csv(s, rows);
  return s.str();
}

std::string report_csv_without_timing(const std::vector<ReportRow>& rows) {
  const auto& names = report_columns();
  std::string out = csv_line(names);
  for (const ReportRow& r : rows) {
    auto cells = row_cells(r);
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (is_timing_column(names[i])) cells[i].clear();
    }
    out += csv_line(cells);
  }
  return out;
}

std::vector<ReportRow> read_report_csv(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + file.string());
  std::ostringstream s;
  s << in.rdbuf();
  const auto records = parse_csv(s.str());
  if (records.empty() || records.front() != report_columns()) {
    throw InvalidInput(file.string() + ": missing or unexpected report header");
  }
  std::vector<ReportRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) rows.push_back(row_from_cells(records[i]));
  return rows;
}

Json row_to_json(const ReportRow& row) {
  Json j = Json::object();
  const auto cells = row_cells(row);
  const auto& names = report_columns();
  for (std::size_t i = 0; i < names.size(); ++i) j[names[i]] = cells[i];
  return j;
}

ReportRow row_from_json(const Json& j) {
  std::vector<std::string> cells;
  for (const std::string& name : report_columns()) {
    if (!j.contains(name) || !j.at(name).is_string()) {
      throw InvalidInput("row record lacks field '" + name + "'");
    }
    cells.push_back(j.at(name).get<std::string>());
  }
  return row_from_cells(cells);
}

void write_field_csv(const std::filesystem::path& file, const FieldDump& dump) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + file.string());
  const bool two_d = !dump.y.empty();
  out << (two_d ? csv_line({"x", "y", "T", "chi", "d"}) : csv_line({"x", "T", "chi", "d"}));
  for (std::size_t i = 0; i < dump.x.size(); ++i) {
    std::vector<std::string> cells{format_double(dump.x[i])};
    if (two_d) cells.push_back(format_double(dump.y[i]));
    cells.push_back(format_double(dump.temperature[i]));
    cells.push_back(format_double(dump.chi[i]));
    cells.push_back(format_double(dump.distance[i]));
    out << csv_line(cells);
  }
}

void ensure_writable_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw InvalidInput("output directory '" + dir.string() + "' cannot be created");
  }
  const auto probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!(out << "ok")) throw InvalidInput("output directory '" + dir.string() + "' is not writable");
  }
  std::filesystem::remove(probe, ec);
}

std::string iso_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_report(const std::filesystem::path& dir, const std::vector<ReportRow>& rows,
                  const ReportMeta& meta, const std::vector<std::optional<FieldDump>>& fields) {
  ensure_writable_directory(dir);
  {
    std::ofstream out(dir / "report.csv", std::ios::binary);
    write_report_csv(out, rows);
    if (!out) throw InvalidInput("failed writing report.csv");
  }
  Json m;
  m["tool"] = "csfbench";
  m["version"] = kToolVersion;
  m["config"] = meta.config;
  m["start"] = iso_timestamp(meta.start);
  m["end"] = iso_timestamp(meta.end);
  Json timing = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    timing.push_back({{"row", i}, {"key", rows[i].key}, {"wall_seconds", rows[i].wall_seconds},
                      {"status", rows[i].status}});
  }
  m["rows"] = timing;
  m["notes"] = meta.notes;
  {
    std::ofstream out(dir / "meta.json");
    out << m.dump(2) << '\n';
  }
  bool any_field = false;
  for (std::size_t i = 0; i < fields.size() && i < rows.size(); ++i) {
    if (!fields[i]) continue;
    if (!any_field) {
      std::filesystem::create_directories(dir / "fields");
      any_field = true;
    }
    write_field_csv(dir / "fields" / (std::to_string(i) + ".csv"), *fields[i]);
  }
}

}  // namespace csf
