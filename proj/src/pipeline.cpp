#include "wtn/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "wtn/csv.hpp"
#include "wtn/error.hpp"
#include "wtn/metrics.hpp"
#include "wtn/netreduce.hpp"

#ifndef WTN_DEFAULT_COUNTRY_REGISTRY
#define WTN_DEFAULT_COUNTRY_REGISTRY "data/countries.csv"
#endif

namespace wtn {

namespace {

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("invalid value '" + std::string(text) + "' for " + std::string(key));
    }
    return value;
}

std::optional<double> try_parse_double(const std::string& text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

void RunConfig::validate() const {
    if (!(google.alpha > 0.0 && google.alpha < 1.0)) throw ConfigError("alpha must lie in (0,1)");
    if (!(power.tol > 0.0)) throw ConfigError("tol must be positive");
    if (power.max_iter < 1) throw ConfigError("max_iter must be at least 1");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
    if (k < 1) throw ConfigError("k must be at least 1");
}

void apply_config_entry(RunConfig& config, std::string_view key, std::string_view value) {
    if (key == "alpha") {
        config.google.alpha = parse_number<double>(key, value);
    } else if (key == "dangling_policy") {
        config.google.dangling_policy = std::string(value);
    } else if (key == "tol") {
        config.power.tol = parse_number<double>(key, value);
    } else if (key == "max_iter") {
        config.power.max_iter = parse_number<int>(key, value);
    } else if (key == "delta") {
        config.delta = parse_number<double>(key, value);
    } else if (key == "k") {
        config.k = parse_number<std::size_t>(key, value);
    } else if (key == "format") {
        if (value == "csv") {
            config.format = OutputFormat::csv;
        } else if (value == "json") {
            config.format = OutputFormat::json;
        } else {
            throw ConfigError("format must be csv or json");
        }
    } else if (key == "out") {
        config.out_dir = std::filesystem::path(value);
    } else if (key == "data") {
        config.data = std::filesystem::path(value);
    } else if (key.starts_with("data.")) {
        config.data_by_year[parse_number<int>(key, key.substr(5))] = std::filesystem::path(value);
    } else if (key == "country_registry") {
        config.country_registry = std::filesystem::path(value);
    } else if (key == "product_registry") {
        config.product_registry = std::filesystem::path(value);
    } else {
        throw ConfigError("unknown configuration key '" + std::string(key) + "'");
    }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileError(path.string(), "cannot open config file");
    const auto base = path.parent_path();
    auto resolve = [&](std::filesystem::path& p) {
        if (!p.empty() && p.is_relative()) p = base / p;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto text = csv::trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected `key = value`");
        }
        const auto key = csv::trim(std::string_view(text).substr(0, eq));
        const auto value = csv::trim(std::string_view(text).substr(eq + 1));
        apply_config_entry(config, key, value);
        if (key == "data") resolve(config.data);
        if (key == "country_registry") resolve(config.country_registry);
        if (key == "product_registry") resolve(config.product_registry);
        if (key == "out") resolve(config.out_dir);
        if (key.starts_with("data.")) resolve(config.data_by_year[parse_number<int>(key, std::string_view(key).substr(5))]);
    }
}

// ---------------------------------------------------------------------------
// Analysis

const RankVector& YearAnalysis::rank(RankKind kind) const {
    switch (kind) {
        case RankKind::pagerank: return pagerank;
        case RankKind::cheirank: return cheirank;
        case RankKind::importrank: return importrank;
        case RankKind::exportrank: return exportrank;
    }
    return pagerank;
}

YearAnalysis analyze(MoneyTensor tensor, const GoogleOptions& google, const PowerIterationOptions& power) {
    auto g = build_google(tensor, Direction::direct, google);
    auto g_star = build_google(tensor, Direction::inverted, google);
    auto p = pagerank(g, power);
    auto p_star = pagerank(g_star, power);
    auto [p_hat, p_hat_star] = import_export_rank(tensor);
    auto balances = balance_report(p, p_star, p_hat, p_hat_star);
    return YearAnalysis{std::move(tensor), std::move(g),      std::move(g_star),     std::move(p),
                        std::move(p_star), std::move(p_hat), std::move(p_hat_star), std::move(balances)};
}

NetworkStats summarize_network_stats(const MoneyTensor& m) {
    return NetworkStats{m.link_count(), m.total_volume()};
}

// ---------------------------------------------------------------------------
// Workspace

Workspace::Workspace(RunConfig config, std::ostream* log) : config_(std::move(config)), log_(log) {
    config_.validate();
    const auto country_path = config_.country_registry.empty()
                                  ? std::filesystem::path(WTN_DEFAULT_COUNTRY_REGISTRY)
                                  : config_.country_registry;
    countries_ = CountryRegistry::from_csv(country_path);
    products_ = config_.product_registry.empty() ? ProductRegistry::sitc_sections()
                                                 : ProductRegistry::from_csv(config_.product_registry);
}

std::filesystem::path Workspace::data_path(int year) const {
    if (const auto it = config_.data_by_year.find(year); it != config_.data_by_year.end()) return it->second;
    if (config_.data.empty()) throw ConfigError("no data file configured for year " + std::to_string(year));
    if (std::filesystem::is_directory(config_.data)) return config_.data / (std::to_string(year) + ".csv");
    return config_.data;
}

void Workspace::add_tensor(MoneyTensor tensor) {
    const int year = tensor.year();
    analyses_.erase(year);
    tensors_.insert_or_assign(year, std::move(tensor));
}

const MoneyTensor& Workspace::tensor(int year) {
    if (const auto it = tensors_.find(year); it != tensors_.end()) return it->second;

    const auto path = data_path(year);
    if (!std::filesystem::exists(path)) throw FileError(path.string(), "missing data file");
    const auto parsed = parse_records_file(path, countries_, products_);
    if (log_) {
        *log_ << "read " << parsed.records.size() << " records from " << path.string() << " (skipped "
              << parsed.skipped_unknown_code << " unknown-code, " << parsed.skipped_self_trade
              << " self-trade, " << parsed.skipped_other_flow << " re-export/re-import rows; "
              << parsed.diagnostics.size() << " malformed rows)\n";
        for (std::size_t i = 0; i < parsed.diagnostics.size() && i < 10; ++i) {
            *log_ << "  line " << parsed.diagnostics[i].line << ": " << parsed.diagnostics[i].message << '\n';
        }
    }
    auto m = build_money_tensor(parsed.records, year, products_, countries_);
    if (!(m.total_volume() > 0.0)) {
        throw DataError("no trade recorded for year " + std::to_string(year) + " in " + path.string());
    }
    return tensors_.emplace(year, std::move(m)).first->second;
}

const YearAnalysis& Workspace::analysis(int year) {
    if (const auto it = analyses_.find(year); it != analyses_.end()) return *it->second;
    auto result = std::make_unique<YearAnalysis>(analyze(tensor(year), config_.google, config_.power));
    return *analyses_.emplace(year, std::move(result)).first->second;
}

std::size_t Workspace::product_index(int sitc) const {
    if (const auto p = products_.find(sitc)) return *p;
    throw ConfigError("unknown product code " + std::to_string(sitc));
}

std::string entity_label(const Workspace& ws, Level level, std::size_t entity) {
    const std::size_t nc = ws.countries().size();
    switch (level) {
        case Level::country: return ws.countries().at(entity).iso2;
        case Level::product: return std::to_string(ws.products().at(entity).sitc);
        case Level::node: break;
    }
    return std::to_string(ws.products().at(entity / nc).sitc) + ":" + ws.countries().at(entity % nc).iso2;
}

std::vector<std::string> parse_country_list(std::string_view file_or_list) {
    std::string text(file_or_list);
    const std::filesystem::path candidate(text);
    if (std::filesystem::is_regular_file(candidate)) {
        std::ifstream in(candidate);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
    }
    std::replace_if(text.begin(), text.end(), [](char ch) { return ch == ',' || std::isspace(static_cast<unsigned char>(ch)); }, ' ');
    std::istringstream tokens(text);
    std::vector<std::string> codes;
    for (std::string code; tokens >> code;) codes.push_back(code);
    if (codes.empty()) throw ConfigError("empty country list");
    return codes;
}

// ---------------------------------------------------------------------------
// Tables

report::Table rank_table(Workspace& ws, int year, RankKind kind, Level level) {
    const auto& r = ws.analysis(year).rank(kind);
    const auto index = sort_index(r, level);
    const auto& probs = r.probs(level);
    report::Table table{{"rank", "entity", "probability"}, {}};
    for (std::size_t k = 0; k < index.size(); ++k) {
        const std::size_t e = index.ordering()[k];
        table.rows.push_back({static_cast<std::int64_t>(k + 1), entity_label(ws, level, e),
                              probs[static_cast<Eigen::Index>(e)]});
    }
    return table;
}

report::Table balance_table(Workspace& ws, int year, Level level, std::optional<int> diff_year) {
    if (level == Level::node) throw ConfigError("balance level must be country or product");
    BalanceReport b = ws.analysis(year).balances;
    if (diff_year) b = difference(ws.analysis(*diff_year).balances, b);

    const bool by_country = level == Level::country;
    const auto& values = by_country ? b.country : b.product;
    const auto& hats = by_country ? b.country_hat : b.product_hat;
    report::Table table{{by_country ? "country" : "product", "B", "Bhat"}, {}};
    for (Eigen::Index e = 0; e < values.size(); ++e) {
        table.rows.push_back({entity_label(ws, level, static_cast<std::size_t>(e)), values[e], hats[e]});
    }
    return table;
}

report::Table balance_matrix_table(Workspace& ws, int year, bool import_export, std::optional<int> diff_year,
                                   bool two_d_rank_order) {
    const auto& base = ws.analysis(year);
    BalanceReport b = base.balances;
    if (diff_year) b = difference(ws.analysis(*diff_year).balances, b);

    const std::size_t nc = ws.countries().size();
    std::vector<std::size_t> columns(nc);
    for (std::size_t c = 0; c < nc; ++c) columns[c] = c;
    if (two_d_rank_order) {
        columns = two_d_rank(sort_index(base.pagerank, Level::country), sort_index(base.cheirank, Level::country))
                      .ordering();
    }

    report::Table table;
    table.header.push_back("product");
    for (const std::size_t c : columns) table.header.push_back(ws.countries().at(c).iso2);
    for (std::size_t p = 0; p < ws.products().size(); ++p) {
        std::vector<report::Cell> row{std::to_string(ws.products().at(p).sitc)};
        for (const std::size_t c : columns) row.emplace_back(import_export ? b.node_hat_value(p, c) : b.node_value(p, c));
        table.rows.push_back(std::move(row));
    }
    return table;
}

report::Table sensitivity_table(Workspace& ws, int year, int sitc, std::optional<int> diff_year, std::ostream* log) {
    const std::size_t p = ws.product_index(sitc);
    SensitivityOptions options;
    options.delta = ws.config().delta;
    options.google = ws.config().google;
    options.power = ws.config().power;

    auto run = [&](int y) {
        auto s = balance_sensitivity(ws.tensor(y), p, options);
        if (log) {
            *log << "sensitivity " << y << " product " << sitc << ": delta " << s.delta_used
                 << ", central difference, Richardson gap " << s.richardson_gap << '\n';
        }
        return s.derivative;
    };
    Eigen::VectorXd values = run(year);
    if (diff_year) values = run(*diff_year) - values;

    report::Table table{{"country", "dBddelta"}, {}};
    for (Eigen::Index c = 0; c < values.size(); ++c) {
        table.rows.push_back({ws.countries().at(static_cast<std::size_t>(c)).iso2, values[c]});
    }
    return table;
}

namespace {

ReducedMatrix reduced_for_year(Workspace& ws, int year, std::size_t p, std::span<const std::string> countries) {
    const auto& a = ws.analysis(year);
    return reduced_for_product(a.google, a.pagerank, ws.countries(), countries, p);
}

}  // namespace

report::Table regomax_table(Workspace& ws, int year, int sitc, std::span<const std::string> countries,
                            std::optional<int> diff_year) {
    const std::size_t p = ws.product_index(sitc);
    ReducedMatrix gr = reduced_for_year(ws, year, p, countries);
    if (diff_year) gr = difference(reduced_for_year(ws, *diff_year, p, countries), gr);

    const auto& members = gr.subset.members();
    report::Table table;
    table.header.push_back("node");
    for (const std::size_t i : members) table.header.push_back(ws.countries().at(gr.layout.country_of(i)).iso2);
    for (std::size_t a = 0; a < members.size(); ++a) {
        std::vector<report::Cell> row{ws.countries().at(gr.layout.country_of(members[a])).iso2};
        for (std::size_t b = 0; b < members.size(); ++b) {
            row.emplace_back(gr.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

report::Table network_table(Workspace& ws, int year, std::optional<int> diff_year, int sitc, std::size_t k,
                            std::span<const std::string> countries) {
    const std::size_t p = ws.product_index(sitc);
    const auto net = top_k_network(reduced_for_year(ws, year, p, countries), k);
    const NodeLayout layout{ws.products().size(), ws.countries().size()};
    auto label = [&](std::size_t node) { return ws.countries().at(layout.country_of(node)).iso2; };

    report::Table table{{"source", "target", "class", "weight_y1", "weight_y2"}, {}};
    if (!diff_year) {
        for (const auto& e : net.edges) table.rows.push_back({label(e.source), label(e.target), "top_k", e.weight, ""});
        return table;
    }
    const auto later = top_k_network(reduced_for_year(ws, *diff_year, p, countries), k);
    const auto diff = diff_networks(net, later);
    auto weight = [](const std::optional<double>& w) -> report::Cell {
        if (w) return *w;
        return std::string();
    };
    for (const auto& e : diff.edges) {
        table.rows.push_back({label(e.source), label(e.target), std::string(to_string(e.change)),
                              weight(e.weight_before), weight(e.weight_after)});
    }
    return table;
}

report::Table kendall_table(Workspace& ws, RankKind kind, std::span<const int> years, Level level) {
    if (years.size() < 2) throw ConfigError("kendall needs at least two years");
    std::vector<RankingList> lists;
    for (const int y : years) {
        const auto index = sort_index(ws.analysis(y).rank(kind), level);
        lists.push_back(RankingList::from_ordering(index.ordering()));
    }
    report::Table table{{"year_a", "year_b", "distance"}, {}};
    for (std::size_t i = 0; i < years.size(); ++i) {
        for (std::size_t j = i + 1; j < years.size(); ++j) {
            table.rows.push_back({static_cast<std::int64_t>(years[i]), static_cast<std::int64_t>(years[j]),
                                  kendall_distance(lists[i], lists[j])});
        }
    }
    return table;
}

report::Table two_d_rank_table(Workspace& ws, int year) {
    const auto& a = ws.analysis(year);
    const auto k = sort_index(a.pagerank, Level::country);
    const auto k_star = sort_index(a.cheirank, Level::country);
    const auto k2 = two_d_rank(k, k_star);
    report::Table table{{"K2", "K", "Kstar", "country", "name"}, {}};
    for (std::size_t pos = 0; pos < k2.ordering().size(); ++pos) {
        const std::size_t c = k2.ordering()[pos];
        table.rows.push_back({static_cast<std::int64_t>(pos + 1), static_cast<std::int64_t>(k.rank_of(c)),
                              static_cast<std::int64_t>(k_star.rank_of(c)), ws.countries().at(c).iso2,
                              ws.countries().at(c).name});
    }
    return table;
}

report::Table stats_table(Workspace& ws, int year, std::optional<int> diff_year) {
    const auto base = summarize_network_stats(ws.tensor(year));
    if (!diff_year) {
        return {{"year", "link_count", "total_volume"},
                {{static_cast<std::int64_t>(year), static_cast<std::int64_t>(base.link_count), base.total_volume}}};
    }
    const auto other = summarize_network_stats(ws.tensor(*diff_year));
    const double link_change = static_cast<double>(other.link_count) / static_cast<double>(base.link_count) - 1.0;
    const double volume_change = other.total_volume / base.total_volume - 1.0;
    return {{"year", "link_count", "total_volume", "link_change", "volume_change"},
            {{static_cast<std::int64_t>(year), static_cast<std::int64_t>(base.link_count), base.total_volume, 0.0, 0.0},
             {static_cast<std::int64_t>(*diff_year), static_cast<std::int64_t>(other.link_count), other.total_volume,
              link_change, volume_change}}};
}

report::Table compare_tables(const report::TextTable& before, const report::TextTable& after) {
    if (before.header != after.header) throw ConfigError("compared tables have different headers");
    std::map<std::string, const std::vector<std::string>*> by_key;
    for (const auto& row : before.rows) {
        if (row.empty()) continue;
        if (!by_key.emplace(row.front(), &row).second) throw ConfigError("duplicate key '" + row.front() + "'");
    }

    report::Table out{after.header, {}};
    for (const auto& row : after.rows) {
        if (row.empty()) continue;
        const auto it = by_key.find(row.front());
        if (it == by_key.end()) throw ConfigError("key '" + row.front() + "' missing from the earlier table");
        const auto& old = *it->second;
        if (old.size() != row.size()) throw ConfigError("row '" + row.front() + "' has a different width");

        std::vector<report::Cell> cells{row.front()};
        for (std::size_t i = 1; i < row.size(); ++i) {
            const auto x = try_parse_double(row[i]);
            const auto y = try_parse_double(old[i]);
            if (x && y) {
                cells.emplace_back(*x - *y);
            } else if (row[i] == old[i]) {
                cells.emplace_back(row[i]);
            } else {
                throw ConfigError("column '" + after.header[i] + "' differs in text for key '" + row.front() + "'");
            }
        }
        out.rows.push_back(std::move(cells));
    }
    return out;
}

}  // namespace wtn
