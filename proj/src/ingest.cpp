#include "wtn/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <tuple>

#include "wtn/csv.hpp"
#include "wtn/error.hpp"

namespace wtn {

namespace {

std::optional<long> parse_integer(std::string_view text) {
    long value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

std::optional<double> parse_real(std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileError(path.string(), "cannot open file");
    return in;
}

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!csv::trim(line).empty()) return true;
    }
    return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// ProductRegistry

ProductRegistry::ProductRegistry(std::vector<Product> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const Product& a, const Product& b) { return a.sitc < b.sitc; });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].sitc != static_cast<int>(i)) {
            throw ParseError("product codes must be distinct and contiguous from 0; found " +
                             std::to_string(entries_[i].sitc) + " at position " +
                             std::to_string(i));
        }
    }
}

ProductRegistry ProductRegistry::sitc_sections() {
    return ProductRegistry({
        {0, "Food and live animals"},
        {1, "Beverages and tobacco"},
        {2, "Crude materials, inedible, except fuels"},
        {3, "Mineral fuels, lubricants and related materials"},
        {4, "Animal and vegetable oils, fats and waxes"},
        {5, "Chemicals and related products, n.e.s."},
        {6, "Manufactured goods classified chiefly by material"},
        {7, "Machinery and transport equipment"},
        {8, "Miscellaneous manufactured articles"},
        {9, "Commodities and transactions not classified elsewhere in the SITC"},
    });
}

ProductRegistry ProductRegistry::from_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return from_stream(in);
}

ProductRegistry ProductRegistry::from_stream(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_content_line(in, line, line_no)) throw ParseError("empty product registry");
    std::vector<Product> entries;
    while (next_content_line(in, line, line_no)) {
        const auto fields = csv::split_line(line);
        const auto code = fields.size() == 2 ? parse_integer(fields[0]) : std::nullopt;
        if (!code) {
            throw ParseError("product registry line " + std::to_string(line_no) +
                             ": expected `sitc,label`");
        }
        entries.push_back({static_cast<int>(*code), fields[1]});
    }
    return ProductRegistry(std::move(entries));
}

std::optional<std::size_t> ProductRegistry::find(int sitc) const {
    if (sitc < 0 || static_cast<std::size_t>(sitc) >= entries_.size()) return std::nullopt;
    return static_cast<std::size_t>(sitc);
}

// ---------------------------------------------------------------------------
// CountryRegistry

CountryRegistry::CountryRegistry(std::vector<Country> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& code = entries_[i].iso2;
        if (code.size() != 2) throw ParseError("country code must have two letters: '" + code + "'");
        if (!by_code_.emplace(code, i).second) throw ParseError("duplicate country code: " + code);
    }
}

CountryRegistry CountryRegistry::from_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return from_stream(in);
}

CountryRegistry CountryRegistry::from_stream(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_content_line(in, line, line_no)) throw ParseError("empty country registry");
    std::vector<Country> entries;
    while (next_content_line(in, line, line_no)) {
        auto fields = csv::split_line(line);
        if (fields.size() != 2) {
            throw ParseError("country registry line " + std::to_string(line_no) +
                             ": expected `iso2,name`");
        }
        entries.push_back({std::move(fields[0]), std::move(fields[1])});
    }
    return CountryRegistry(std::move(entries));
}

std::optional<std::size_t> CountryRegistry::find(std::string_view iso2) const {
    const auto it = by_code_.find(std::string(iso2));
    if (it == by_code_.end()) return std::nullopt;
    return it->second;
}

std::size_t CountryRegistry::index_of(std::string_view iso2) const {
    if (auto c = find(iso2)) return *c;
    throw ConfigError("unknown country code: " + std::string(iso2));
}

// ---------------------------------------------------------------------------
// Records

ParseResult parse_records(std::istream& in, const CountryRegistry& countries,
                          const ProductRegistry& products) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_content_line(in, line, line_no)) throw ParseError("empty trade record file");

    const auto header = csv::split_line(line);
    const std::vector<std::string> expected{"year", "reporter", "partner", "sitc", "flow", "value_usd"};
    if (header != expected) {
        throw ParseError("trade record header must be `year,reporter,partner,sitc,flow,value_usd`");
    }

    ParseResult result;
    std::size_t data_rows = 0;
    while (next_content_line(in, line, line_no)) {
        ++data_rows;
        const auto fields = csv::split_line(line);
        auto reject = [&](const std::string& why) {
            result.diagnostics.push_back({line_no, why});
        };
        if (fields.size() != 6) {
            reject("expected 6 fields, found " + std::to_string(fields.size()));
            continue;
        }
        const auto year = parse_integer(fields[0]);
        if (!year) {
            reject("invalid year '" + fields[0] + "'");
            continue;
        }
        const auto sitc = parse_integer(fields[3]);
        if (!sitc) {
            reject("invalid sitc code '" + fields[3] + "'");
            continue;
        }
        const auto value = parse_real(fields[5]);
        if (!value || !std::isfinite(*value)) {
            reject("invalid value '" + fields[5] + "'");
            continue;
        }
        if (*value < 0.0) {
            reject("negative value " + fields[5]);
            continue;
        }

        const auto flow_name = lower(fields[4]);
        Flow flow;
        if (flow_name == "import") {
            flow = Flow::imports;
        } else if (flow_name == "export") {
            flow = Flow::exports;
        } else if (flow_name == "re-import" || flow_name == "re-export") {
            ++result.skipped_other_flow;
            continue;
        } else {
            reject("unknown flow '" + fields[4] + "'");
            continue;
        }

        const auto reporter = countries.find(fields[1]);
        const auto partner = countries.find(fields[2]);
        const auto product = products.find(static_cast<int>(*sitc));
        if (!reporter || !partner || !product) {
            ++result.skipped_unknown_code;
            continue;
        }
        if (*reporter == *partner) {
            ++result.skipped_self_trade;
            continue;
        }
        result.records.push_back({static_cast<int>(*year), *reporter, *partner, *product, flow, *value});
    }
    if (data_rows == 0) throw ParseError("trade record file has no data rows");
    return result;
}

ParseResult parse_records_file(const std::filesystem::path& path,
                               const CountryRegistry& countries,
                               const ProductRegistry& products) {
    auto in = open_input(path);
    try {
        return parse_records(in, countries, products);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// MoneyTensor

MoneyTensor::MoneyTensor(int year, ProductRegistry products, CountryRegistry countries,
                         std::vector<double> values)
    : year_(year),
      products_(std::move(products)),
      countries_(std::move(countries)),
      values_(std::move(values)) {
    const std::size_t np = n_products();
    const std::size_t nc = n_countries();
    if (values_.size() != np * nc * nc) {
        throw DataError("money tensor needs " + std::to_string(np * nc * nc) + " cells, got " +
                        std::to_string(values_.size()));
    }
    product_volumes_.assign(np, 0.0);
    for (std::size_t p = 0; p < np; ++p) {
        double volume = 0.0;
        for (std::size_t e = 0; e < nc; ++e) {
            for (std::size_t i = 0; i < nc; ++i) {
                const double x = values_[offset(p, e, i)];
                if (!std::isfinite(x) || x < 0.0) {
                    throw DataError("money tensor values must be finite and non-negative");
                }
                if (e == i && x != 0.0) throw DataError("money tensor has a self-trade cell");
                volume += x;
            }
        }
        product_volumes_[p] = volume;
    }
    for (const double vp : product_volumes_) total_volume_ += vp;
}

std::size_t MoneyTensor::link_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(values_.begin(), values_.end(), [](double x) { return x > 0.0; }));
}

MoneyTensor MoneyTensor::scaled(double factor) const {
    auto values = values_;
    for (auto& x : values) x *= factor;
    return MoneyTensor(year_, products_, countries_, std::move(values));
}

MoneyTensor MoneyTensor::with_product_scaled(std::size_t p, double factor) const {
    auto values = values_;
    const std::size_t nc = n_countries();
    const std::size_t begin = offset(p, 0, 0);
    for (std::size_t k = begin; k < begin + nc * nc; ++k) values[k] *= factor;
    return MoneyTensor(year_, products_, countries_, std::move(values));
}

MoneyTensor MoneyTensor::transposed() const {
    std::vector<double> values(values_.size(), 0.0);
    const std::size_t nc = n_countries();
    for (std::size_t p = 0; p < n_products(); ++p)
        for (std::size_t e = 0; e < nc; ++e)
            for (std::size_t i = 0; i < nc; ++i) values[offset(p, i, e)] = values_[offset(p, e, i)];
    return MoneyTensor(year_, products_, countries_, std::move(values));
}

MoneyTensor build_money_tensor(std::span<const TradeRecord> records, int year,
                               const ProductRegistry& products,
                               const CountryRegistry& countries) {
    const std::size_t np = products.size();
    const std::size_t nc = countries.size();

    std::vector<TradeRecord> selected;
    for (const auto& r : records) {
        if (r.year != year) continue;
        if (r.product >= np || r.reporter >= nc || r.partner >= nc) {
            throw DataError("trade record index outside the registries");
        }
        if (r.reporter == r.partner) continue;
        selected.push_back(r);
    }
    // Canonical order makes the duplicate sums independent of input order.
    auto key = [](const TradeRecord& r) {
        return std::make_tuple(r.product, r.exporter(), r.importer(), r.flow, r.value);
    };
    std::sort(selected.begin(), selected.end(),
              [&](const TradeRecord& a, const TradeRecord& b) { return key(a) < key(b); });

    const std::size_t cells = np * nc * nc;
    std::vector<double> import_reports(cells, 0.0);
    std::vector<double> export_reports(cells, 0.0);
    for (const auto& r : selected) {
        const std::size_t k = (r.product * nc + r.exporter()) * nc + r.importer();
        (r.flow == Flow::imports ? import_reports : export_reports)[k] += r.value;
    }
    std::vector<double> values(cells);
    for (std::size_t k = 0; k < cells; ++k) values[k] = std::max(import_reports[k], export_reports[k]);
    return MoneyTensor(year, products, countries, std::move(values));
}

}  // namespace wtn
