#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hanstream {

/// Missing values are std::monostate.
using Cell = std::variant<std::monostate, double, std::string>;

enum class ColumnType { Number, Text, TimeIndex };

std::string_view column_type_name(ColumnType t) noexcept;

struct Column {
  std::string name;
  ColumnType type = ColumnType::Text;
  friend bool operator==(const Column&, const Column&) = default;
};

struct Dataset {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  std::optional<std::size_t> column_index(std::string_view name) const noexcept;
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

enum class DataFormat { Csv, Json };

/// Parses CSV (header row required) or a JSON array of flat objects.
/// Columns whose non-missing values are all numeric become Number, others
/// Text; `time_field`, when present, is typed TimeIndex.
/// Errors: ParseError (1-based row for ragged CSV), TypeError (JSON column
/// mixing numbers and text), EmptyDataset.
Dataset load_dataset(std::string_view source, DataFormat format, std::optional<std::string> time_field = {});

/// Format chosen by extension (.csv / .json). Throws MissingData if unreadable.
Dataset load_dataset_file(const std::filesystem::path& path, std::optional<std::string> time_field = {});

std::string read_file(const std::filesystem::path& path);

/// Display text: integral numbers print without a fraction, others in
/// shortest round-trip form; missing prints as empty.
std::string format_cell(const Cell& cell);
std::string format_number(double v);

/// Total order for sortable time values (numbers before text).
bool cell_less(const Cell& a, const Cell& b);

}  // namespace hanstream
