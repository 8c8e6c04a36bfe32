#include "hanstream/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hanstream/error.hpp"

namespace hanstream {

std::string_view column_type_name(ColumnType t) noexcept {
  switch (t) {
    case ColumnType::Number: return "number";
    case ColumnType::Text: return "text";
    case ColumnType::TimeIndex: return "time";
  }
  return "?";
}

std::optional<std::size_t> Dataset::column_index(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  return std::nullopt;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

std::vector<CsvRecord> split_csv(std::string_view src) {
  if (src.size() >= 3 && src.substr(0, 3) == "\xEF\xBB\xBF") src.remove_prefix(3);
  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  std::size_t line = 1;
  current.line = 1;
  bool in_quotes = false;
  bool field_started = false;

  auto finish_record = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    const bool blank = current.fields.size() == 1 && current.fields[0].empty() && !field_started;
    if (!blank) records.push_back(std::move(current));
    current = CsvRecord{};
    field_started = false;
  };

  for (std::size_t i = 0; i < src.size(); ++i) {
    const char c = src[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < src.size() && src[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        current.fields.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        finish_record();
        ++line;
        current.line = line;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) throw Error(Errc::ParseError, "unterminated quoted field at row " + std::to_string(current.line));
  if (field_started || !field.empty() || !current.fields.empty()) finish_record();
  return records;
}

void check_unique(const std::vector<Column>& cols) {
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (std::size_t j = i + 1; j < cols.size(); ++j) {
      if (cols[i].name == cols[j].name) throw Error(Errc::ParseError, "duplicate column '" + cols[i].name + "'");
    }
  }
}

void apply_time_field(Dataset& ds, const std::optional<std::string>& time_field) {
  if (!time_field) return;
  if (auto idx = ds.column_index(*time_field)) ds.columns[*idx].type = ColumnType::TimeIndex;
}

Dataset load_csv(std::string_view src) {
  auto records = split_csv(src);
  if (records.empty()) throw Error(Errc::EmptyDataset, "no header row");
  Dataset ds;
  for (auto& name : records.front().fields) ds.columns.push_back({std::string(trim(name)), ColumnType::Text});
  check_unique(ds.columns);
  if (records.size() < 2) throw Error(Errc::EmptyDataset, "no data rows");

  const std::size_t n = ds.columns.size();
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].fields.size() != n) {
      throw Error(Errc::ParseError, "row " + std::to_string(records[r].line) + " has " +
                                        std::to_string(records[r].fields.size()) + " fields, expected " +
                                        std::to_string(n));
    }
  }

  for (std::size_t c = 0; c < n; ++c) {
    bool numeric = false;
    bool all_numeric = true;
    for (std::size_t r = 1; r < records.size() && all_numeric; ++r) {
      const auto text = trim(records[r].fields[c]);
      if (text.empty()) continue;
      if (parse_number(text)) {
        numeric = true;
      } else {
        all_numeric = false;
      }
    }
    if (numeric && all_numeric) ds.columns[c].type = ColumnType::Number;
  }

  ds.rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    std::vector<Cell> row;
    row.reserve(n);
    for (std::size_t c = 0; c < n; ++c) {
      const auto& raw = records[r].fields[c];
      if (trim(raw).empty()) {
        row.emplace_back(std::monostate{});
      } else if (ds.columns[c].type == ColumnType::Number) {
        row.emplace_back(*parse_number(raw));
      } else {
        row.emplace_back(raw);
      }
    }
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

Dataset load_json(std::string_view src) {
  // ordered_json keeps object keys in document order, so columns follow
  // first appearance.
  nlohmann::ordered_json ordered;
  try {
    ordered = nlohmann::ordered_json::parse(src);
  } catch (const nlohmann::ordered_json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  if (!ordered.is_array()) throw Error(Errc::ParseError, "dataset JSON must be an array of objects");
  if (ordered.empty()) throw Error(Errc::EmptyDataset, "empty array");

  Dataset ds;
  for (std::size_t r = 0; r < ordered.size(); ++r) {
    const auto& obj = ordered[r];
    if (!obj.is_object()) throw Error(Errc::ParseError, "element " + std::to_string(r + 1) + " is not an object");
    for (const auto& [key, value] : obj.items()) {
      if (value.is_structured()) {
        throw Error(Errc::ParseError, "nested value for '" + key + "' in element " + std::to_string(r + 1));
      }
      if (!ds.column_index(key)) ds.columns.push_back({key, ColumnType::Text});
    }
  }

  const std::size_t n = ds.columns.size();
  std::vector<int> kinds(n, 0);  // bit 1: number seen, bit 2: text seen
  ds.rows.reserve(ordered.size());
  for (const auto& obj : ordered) {
    std::vector<Cell> row(n);
    for (const auto& [key, value] : obj.items()) {
      const std::size_t c = *ds.column_index(key);
      if (value.is_number()) {
        row[c] = value.get<double>();
        kinds[c] |= 1;
      } else if (value.is_string()) {
        row[c] = value.get<std::string>();
        kinds[c] |= 2;
      } else if (value.is_boolean()) {
        row[c] = std::string(value.get<bool>() ? "true" : "false");
        kinds[c] |= 2;
      }
    }
    ds.rows.push_back(std::move(row));
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (kinds[c] == 3) throw Error(Errc::TypeError, "column '" + ds.columns[c].name + "' mixes numbers and text");
    if (kinds[c] == 1) ds.columns[c].type = ColumnType::Number;
  }
  return ds;
}

}  // namespace

Dataset load_dataset(std::string_view source, DataFormat format, std::optional<std::string> time_field) {
  if (trim(source).empty()) throw Error(Errc::EmptyDataset, "empty input");
  Dataset ds = format == DataFormat::Csv ? load_csv(source) : load_json(source);
  apply_time_field(ds, time_field);
  return ds;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MissingData, path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Dataset load_dataset_file(const std::filesystem::path& path, std::optional<std::string> time_field) {
  const auto ext = path.extension().string();
  DataFormat format;
  if (ext == ".csv" || ext == ".CSV") {
    format = DataFormat::Csv;
  } else if (ext == ".json" || ext == ".JSON") {
    format = DataFormat::Json;
  } else {
    throw Error(Errc::ParseError, "unknown dataset extension '" + ext + "'");
  }
  return load_dataset(read_file(path), format, std::move(time_field));
}

std::string format_number(double v) {
  if (std::isfinite(v) && std::floor(v) == v && std::fabs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  return {};
}

bool cell_less(const Cell& a, const Cell& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (const auto* d = std::get_if<double>(&a)) return *d < std::get<double>(b);
  if (const auto* s = std::get_if<std::string>(&a)) return *s < std::get<std::string>(b);
  return false;
}

}  // namespace hanstream
