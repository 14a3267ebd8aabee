#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wtn/balance.hpp"
#include "wtn/google.hpp"
#include "wtn/ingest.hpp"
#include "wtn/ranks.hpp"
#include "wtn/regomax.hpp"
#include "wtn/report.hpp"

namespace wtn {

enum class OutputFormat { csv, json };

struct RunConfig {
    // A single record file holding every year, or a directory of `<year>.csv` files.
    std::filesystem::path data;
    // Explicit per-year files; take precedence over `data`.
    std::map<int, std::filesystem::path> data_by_year;
    std::filesystem::path country_registry;
    std::filesystem::path product_registry;  // empty: built-in SITC sections

    GoogleOptions google;
    PowerIterationOptions power;
    double delta = 1e-3;
    std::size_t k = 4;

    std::filesystem::path out_dir;  // empty: write to stdout
    OutputFormat format = OutputFormat::csv;

    void validate() const;
};

// Applies one `key = value` setting. Keys: alpha, dangling_policy, tol, max_iter,
// delta, k, format, out, data, data.<year>, country_registry, product_registry.
void apply_config_entry(RunConfig& config, std::string_view key, std::string_view value);
// Flat key-value file; '#' starts a comment. Relative paths resolve against the file's directory.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

// Everything derived from one year's tensor.
struct YearAnalysis {
    MoneyTensor tensor;
    GoogleMatrix google;
    GoogleMatrix google_inverted;
    RankVector pagerank;
    RankVector cheirank;
    RankVector importrank;
    RankVector exportrank;
    BalanceReport balances;

    const RankVector& rank(RankKind kind) const;
};

YearAnalysis analyze(MoneyTensor tensor, const GoogleOptions& google = {},
                     const PowerIterationOptions& power = {});

struct NetworkStats {
    std::size_t link_count = 0;
    double total_volume = 0.0;
};

NetworkStats summarize_network_stats(const MoneyTensor& m);

// Loads registries and per-year tensors lazily and caches analyses.
class Workspace {
public:
    explicit Workspace(RunConfig config, std::ostream* log = nullptr);

    const RunConfig& config() const noexcept { return config_; }
    const CountryRegistry& countries() const noexcept { return countries_; }
    const ProductRegistry& products() const noexcept { return products_; }

    std::filesystem::path data_path(int year) const;
    const MoneyTensor& tensor(int year);
    const YearAnalysis& analysis(int year);

    // Preloads a tensor (tests, in-memory use).
    void add_tensor(MoneyTensor tensor);

    std::size_t product_index(int sitc) const;

private:
    RunConfig config_;
    std::ostream* log_;
    CountryRegistry countries_;
    ProductRegistry products_;
    std::map<int, MoneyTensor> tensors_;
    std::map<int, std::unique_ptr<YearAnalysis>> analyses_;
};

// `sitc:iso2` for nodes, iso2 for countries, sitc code for products.
std::string entity_label(const Workspace& ws, Level level, std::size_t entity);

// Parses a comma/whitespace separated code list, or reads one from a file if
// `file_or_list` names an existing file.
std::vector<std::string> parse_country_list(std::string_view file_or_list);

report::Table rank_table(Workspace& ws, int year, RankKind kind, Level level);
// country,B,Bhat (or product,B,Bhat); with diff_year, values are diff_year - year.
report::Table balance_table(Workspace& ws, int year, Level level, std::optional<int> diff_year = {});
// Rows are products, columns countries; B_pc or, with import_export, B^_pc.
report::Table balance_matrix_table(Workspace& ws, int year, bool import_export,
                                   std::optional<int> diff_year = {}, bool two_d_rank_order = false);
report::Table sensitivity_table(Workspace& ws, int year, int sitc, std::optional<int> diff_year = {},
                                std::ostream* log = nullptr);
report::Table regomax_table(Workspace& ws, int year, int sitc, std::span<const std::string> countries,
                            std::optional<int> diff_year = {});
report::Table network_table(Workspace& ws, int year, std::optional<int> diff_year, int sitc,
                            std::size_t k, std::span<const std::string> countries);
report::Table kendall_table(Workspace& ws, RankKind kind, std::span<const int> years, Level level);
report::Table two_d_rank_table(Workspace& ws, int year);
report::Table stats_table(Workspace& ws, int year, std::optional<int> diff_year = {});

// after - before for two tables sharing a header and first-column keys;
// numeric cells are subtracted, text cells must agree.
report::Table compare_tables(const report::TextTable& before, const report::TextTable& after);

}  // namespace wtn
