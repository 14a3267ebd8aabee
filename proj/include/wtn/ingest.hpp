#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wtn {

struct Product {
    int sitc = 0;
    std::string label;
};

// Product groups indexed by their SITC code; codes are contiguous 0..size()-1.
class ProductRegistry {
public:
    ProductRegistry() = default;
    explicit ProductRegistry(std::vector<Product> entries);

    // The ten one-digit SITC sections.
    static ProductRegistry sitc_sections();
    // Reads `sitc,label` with a header line.
    static ProductRegistry from_csv(const std::filesystem::path& path);
    static ProductRegistry from_stream(std::istream& in);

    std::size_t size() const noexcept { return entries_.size(); }
    const Product& at(std::size_t p) const { return entries_.at(p); }
    std::optional<std::size_t> find(int sitc) const;

private:
    std::vector<Product> entries_;
};

struct Country {
    std::string iso2;
    std::string name;
};

// Countries indexed densely in file order.
class CountryRegistry {
public:
    CountryRegistry() = default;
    explicit CountryRegistry(std::vector<Country> entries);

    // Reads `iso2,name` with a header line.
    static CountryRegistry from_csv(const std::filesystem::path& path);
    static CountryRegistry from_stream(std::istream& in);

    std::size_t size() const noexcept { return entries_.size(); }
    const Country& at(std::size_t c) const { return entries_.at(c); }
    std::optional<std::size_t> find(std::string_view iso2) const;
    // Throws ConfigError for an unknown code.
    std::size_t index_of(std::string_view iso2) const;

private:
    std::vector<Country> entries_;
    std::unordered_map<std::string, std::size_t> by_code_;
};

enum class Flow { imports, exports };

// One reported bilateral flow with codes already resolved against the registries.
struct TradeRecord {
    int year = 0;
    std::size_t reporter = 0;
    std::size_t partner = 0;
    std::size_t product = 0;
    Flow flow = Flow::imports;
    double value = 0.0;

    std::size_t exporter() const noexcept { return flow == Flow::exports ? reporter : partner; }
    std::size_t importer() const noexcept { return flow == Flow::exports ? partner : reporter; }
};

struct RowDiagnostic {
    std::size_t line = 0;
    std::string message;
};

struct ParseResult {
    std::vector<TradeRecord> records;
    std::size_t skipped_unknown_code = 0;
    std::size_t skipped_self_trade = 0;
    std::size_t skipped_other_flow = 0;  // re-exports, re-imports
    std::vector<RowDiagnostic> diagnostics;
};

// Parses `year,reporter,partner,sitc,flow,value_usd`. Unknown codes and self-trades
// are counted and skipped; malformed rows produce a diagnostic. Throws ParseError
// when the stream has no header or no data rows.
ParseResult parse_records(std::istream& in, const CountryRegistry& countries,
                          const ProductRegistry& products);
ParseResult parse_records_file(const std::filesystem::path& path,
                               const CountryRegistry& countries,
                               const ProductRegistry& products);

// Trade volumes of one year: value(p, exporter, importer) in USD.
// Immutable after construction; diagonal cells are always zero.
class MoneyTensor {
public:
    MoneyTensor() = default;
    // `values` is laid out as [product][exporter][importer].
    MoneyTensor(int year, ProductRegistry products, CountryRegistry countries,
                std::vector<double> values);

    int year() const noexcept { return year_; }
    const ProductRegistry& products() const noexcept { return products_; }
    const CountryRegistry& countries() const noexcept { return countries_; }
    std::size_t n_products() const noexcept { return products_.size(); }
    std::size_t n_countries() const noexcept { return countries_.size(); }

    double value(std::size_t p, std::size_t exporter, std::size_t importer) const {
        return values_[offset(p, exporter, importer)];
    }
    std::span<const double> values() const noexcept { return values_; }

    // V and V_p. V is the sum of the V_p in product order.
    double total_volume() const noexcept { return total_volume_; }
    double product_volume(std::size_t p) const { return product_volumes_.at(p); }
    std::span<const double> product_volumes() const noexcept { return product_volumes_; }

    // Number of strictly positive cells.
    std::size_t link_count() const noexcept;

    MoneyTensor scaled(double factor) const;
    MoneyTensor with_product_scaled(std::size_t p, double factor) const;
    // Swaps exporter and importer within every product.
    MoneyTensor transposed() const;

    std::size_t offset(std::size_t p, std::size_t exporter, std::size_t importer) const noexcept {
        return (p * n_countries() + exporter) * n_countries() + importer;
    }

private:
    int year_ = 0;
    ProductRegistry products_;
    CountryRegistry countries_;
    std::vector<double> values_;
    std::vector<double> product_volumes_;
    double total_volume_ = 0.0;
};

// Builds the tensor for `year` from records of any years. Duplicate reports of the
// same (product, exporter, importer, flow) are summed; each cell then takes the
// larger of the importer's and the exporter's report.
MoneyTensor build_money_tensor(std::span<const TradeRecord> records, int year,
                               const ProductRegistry& products,
                               const CountryRegistry& countries);

}  // namespace wtn
