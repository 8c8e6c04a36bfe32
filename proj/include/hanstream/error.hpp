#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hanstream {

enum class Errc {
  InvalidFrame,
  DegenerateFinger,
  ParseError,
  TypeError,
  EmptyDataset,
  DegenerateDomain,
  SpecError,
  EmptyGraph,
  UnknownNode,
  IncompleteSeries,
  DegenerateTime,
  SchemaError,
  DuplicateId,
  UnsupportedGesture,
  MissingData,
  UnknownScene,
  ReplayError,
  InvalidConfig,
};

/// Stable snake_case name used on the wire and in CLI output.
std::string_view errc_name(Errc code) noexcept;

/// The single exception type thrown by the engine. Callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code), detail_(detail) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace hanstream
