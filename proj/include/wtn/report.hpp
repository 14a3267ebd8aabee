#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace wtn::report {

using Cell = std::variant<std::string, double, std::int64_t>;

// Rectangular result of one command, serialized to CSV or JSON.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

// 12 significant digits, shortest form ("%.12g"); negative zero prints as 0.
std::string format_number(double x);
std::string format_cell(const Cell& cell);

void write_csv(const Table& table, std::ostream& out);
// Array of objects keyed by the header; numbers carry the same 12-digit rounding.
void write_json(const Table& table, std::ostream& out);

struct TextTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

TextTable read_csv(std::istream& in);

}  // namespace wtn::report
