#pragma once

#include <string>
#include <string_view>

namespace hanstream {

/// Appends a quoted JSON string. Control characters are escaped; other bytes
/// pass through unchanged.
void append_json_string(std::string& out, std::string_view s);

/// Appends the shortest text that parses back to `v`; non-finite values
/// become null.
void append_json_number(std::string& out, double v);

}  // namespace hanstream
