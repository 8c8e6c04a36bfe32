#include "doctest.h"
#include "hanstream/dataset.hpp"
#include "hanstream/error.hpp"

using namespace hanstream;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::ParseError;
}

}  // namespace

TEST_CASE("CSV with header, quoting and inferred types") {
  const auto ds = load_dataset("name,value\n\"a, b\",1\n\"say \"\"hi\"\"\",2.5\nc,\n", DataFormat::Csv);
  REQUIRE(ds.columns.size() == 2);
  CHECK(ds.columns[0] == Column{"name", ColumnType::Text});
  CHECK(ds.columns[1] == Column{"value", ColumnType::Number});
  REQUIRE(ds.rows.size() == 3);
  CHECK(std::get<std::string>(ds.rows[0][0]) == "a, b");
  CHECK(std::get<std::string>(ds.rows[1][0]) == "say \"hi\"");
  CHECK(std::get<double>(ds.rows[1][1]) == 2.5);
  CHECK(std::holds_alternative<std::monostate>(ds.rows[2][1]));
  CHECK(ds.column_index("value") == 1u);
  CHECK_FALSE(ds.column_index("nope"));
}

TEST_CASE("CSV handles BOM, CRLF and blank lines") {
  const auto ds = load_dataset("\xEF\xBB\xBFx,y\r\n1,2\r\n\r\n3,4\r\n", DataFormat::Csv);
  CHECK(ds.columns[0].name == "x");
  CHECK(ds.rows.size() == 2);
  CHECK(std::get<double>(ds.rows[1][1]) == 4.0);
}

TEST_CASE("CSV with a quoted newline") {
  const auto ds = load_dataset("a,b\n\"line1\nline2\",1\n", DataFormat::Csv);
  REQUIRE(ds.rows.size() == 1);
  CHECK(std::get<std::string>(ds.rows[0][0]) == "line1\nline2");
}

TEST_CASE("CSV mixed column falls back to text") {
  const auto ds = load_dataset("v\n1\nx\n", DataFormat::Csv);
  CHECK(ds.columns[0].type == ColumnType::Text);
  CHECK(std::get<std::string>(ds.rows[0][0]) == "1");
}

TEST_CASE("ragged CSV row reports its line") {
  try {
    load_dataset("a,b\n1,2\n3\n", DataFormat::Csv);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
}

TEST_CASE("empty inputs") {
  CHECK(code_of([] { load_dataset("", DataFormat::Csv); }) == Errc::EmptyDataset);
  CHECK(code_of([] { load_dataset("a,b\n", DataFormat::Csv); }) == Errc::EmptyDataset);
  CHECK(code_of([] { load_dataset("[]", DataFormat::Json); }) == Errc::EmptyDataset);
}

TEST_CASE("duplicate CSV header") {
  CHECK(code_of([] { load_dataset("a,a\n1,2\n", DataFormat::Csv); }) == Errc::ParseError);
}

TEST_CASE("JSON array of objects keeps first-appearance column order") {
  const auto ds = load_dataset(R"([{"z":1,"a":"x"},{"a":"y","z":2,"extra":true}])", DataFormat::Json);
  REQUIRE(ds.columns.size() == 3);
  CHECK(ds.columns[0] == Column{"z", ColumnType::Number});
  CHECK(ds.columns[1] == Column{"a", ColumnType::Text});
  CHECK(ds.columns[2].name == "extra");
  CHECK(std::holds_alternative<std::monostate>(ds.rows[0][2]));
}

TEST_CASE("JSON type errors and nesting") {
  CHECK(code_of([] { load_dataset(R"([{"v":1},{"v":"x"}])", DataFormat::Json); }) == Errc::TypeError);
  CHECK(code_of([] { load_dataset(R"([{"v":[1]}])", DataFormat::Json); }) == Errc::ParseError);
  CHECK(code_of([] { load_dataset(R"({"v":1})", DataFormat::Json); }) == Errc::ParseError);
  CHECK(code_of([] { load_dataset("[{", DataFormat::Json); }) == Errc::ParseError);
}

TEST_CASE("time field is typed TimeIndex") {
  const auto ds = load_dataset("year,v\n1950,1\n1955,2\n", DataFormat::Csv, "year");
  CHECK(ds.columns[0].type == ColumnType::TimeIndex);
  CHECK(std::get<double>(ds.rows[1][0]) == 1955.0);
}

TEST_CASE("missing file") {
  CHECK(code_of([] { load_dataset_file("/nonexistent/file.csv"); }) == Errc::MissingData);
}

TEST_CASE("format_number and format_cell") {
  CHECK(format_number(1955) == "1955");
  CHECK(format_number(-3) == "-3");
  CHECK(format_number(2.5) == "2.5");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_cell(Cell{}) == "");
  CHECK(format_cell(Cell{std::string("x")}) == "x");
}

TEST_CASE("cell_less orders numbers before text") {
  CHECK(cell_less(Cell{1.0}, Cell{2.0}));
  CHECK(cell_less(Cell{5.0}, Cell{std::string("a")}));
  CHECK_FALSE(cell_less(Cell{std::string("b")}, Cell{std::string("a")}));
}
