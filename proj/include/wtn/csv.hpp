#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wtn::csv {

// Splits one CSV line into fields. Double-quoted fields may contain commas and
// doubled quotes (""). Leading/trailing whitespace of unquoted fields is trimmed
// and a trailing '\r' is ignored.
std::vector<std::string> split_line(std::string_view line);

// Quotes a field if it contains a comma, quote or newline.
std::string escape(std::string_view field);

std::string trim(std::string_view s);

}  // namespace wtn::csv
