#include "wtn/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "wtn/csv.hpp"
#include "wtn/error.hpp"

namespace wtn::report {

std::string format_number(double x) {
    if (x == 0.0) return "0";
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.12g", x);
    return buffer;
}

std::string format_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<T, double>) {
                return format_number(v);
            } else {
                return std::to_string(v);
            }
        },
        cell);
}

void write_csv(const Table& table, std::ostream& out) {
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out << (i ? "," : "") << csv::escape(table.header[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv::escape(format_cell(row[i]));
        out << '\n';
    }
}

void write_json(const Table& table, std::ostream& out) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < table.header.size(); ++i) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        obj[table.header[i]] = std::strtod(format_number(v).c_str(), nullptr);
                    } else {
                        obj[table.header[i]] = v;
                    }
                },
                row[i]);
        }
        rows.push_back(std::move(obj));
    }
    out << rows.dump(2) << '\n';
}

TextTable read_csv(std::istream& in) {
    TextTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto fields = csv::split_line(line);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
        } else {
            table.rows.push_back(std::move(fields));
        }
    }
    if (!have_header) throw ParseError("empty CSV table");
    return table;
}

}  // namespace wtn::report
