#include "wtn/cli.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "wtn/error.hpp"
#include "wtn/pipeline.hpp"

#ifndef WTN_DEFAULT_SUBSET
#define WTN_DEFAULT_SUBSET "data/top20_2018.txt"
#endif

namespace wtn::cli {

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 computation failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

void write_artifact(const std::filesystem::path& dir, const std::string& file_name, const std::string& contents) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream file(dir / file_name, std::ios::binary);
        if (!file) throw FileError((dir / file_name).string(), "cannot write artifact");
        file << contents;
    }

    const auto manifest_path = dir / "manifest.json";
    std::map<std::string, std::string> checksums;
    if (std::ifstream existing(manifest_path); existing) {
        const auto doc = nlohmann::json::parse(existing, nullptr, false);
        if (doc.is_object() && doc.contains("artifacts")) {
            for (const auto& entry : doc["artifacts"]) {
                checksums[entry.at("file").get<std::string>()] = entry.at("sha256").get<std::string>();
            }
        }
    }
    checksums[file_name] = sha256_hex(contents);

    nlohmann::ordered_json doc;
    doc["artifacts"] = nlohmann::ordered_json::array();
    for (const auto& [file, sum] : checksums) doc["artifacts"].push_back({{"file", file}, {"sha256", sum}});
    std::ofstream out(manifest_path, std::ios::binary);
    out << doc.dump(2) << '\n';
}

namespace {

struct GlobalOptions {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::string> format;
    std::optional<std::string> data;
    std::optional<std::string> country_registry;
    std::optional<std::string> product_registry;
    std::optional<double> alpha;
    std::optional<double> tol;
    std::optional<int> max_iter;
};

RunConfig make_config(const GlobalOptions& g) {
    RunConfig config;
    if (!g.config_path.empty()) apply_config_file(config, g.config_path);
    if (g.out_dir) config.out_dir = *g.out_dir;
    if (g.format) apply_config_entry(config, "format", *g.format);
    if (g.data) config.data = *g.data;
    if (g.country_registry) config.country_registry = *g.country_registry;
    if (g.product_registry) config.product_registry = *g.product_registry;
    if (g.alpha) config.google.alpha = *g.alpha;
    if (g.tol) config.power.tol = *g.tol;
    if (g.max_iter) config.power.max_iter = *g.max_iter;
    return config;
}

std::string suffix(std::optional<int> diff_year) {
    return diff_year ? "_diff" + std::to_string(*diff_year) : std::string();
}

std::vector<int> parse_years(const std::string& text) {
    std::vector<int> years;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            years.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ConfigError("invalid year list '" + text + "'");
        }
    }
    return years;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Google matrix analysis of the multiproduct world trade network", "wtn"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--config", global.config_path, "Flat key = value configuration file");
    app.add_option("--out", global.out_dir, "Write artifacts and manifest.json into this directory");
    app.add_option("--format", global.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--data", global.data, "Trade record CSV, or directory of <year>.csv files");
    app.add_option("--country-registry", global.country_registry, "Country registry CSV (iso2,name)");
    app.add_option("--product-registry", global.product_registry, "Product registry CSV (sitc,label)");
    app.add_option("--alpha", global.alpha, "Damping factor");
    app.add_option("--tol", global.tol, "Power iteration L1 tolerance");
    app.add_option("--max-iter", global.max_iter, "Power iteration limit");

    // Each subcommand fills `task` with a producer of (artifact stem, table).
    std::function<std::pair<std::string, report::Table>(Workspace&)> task;
    std::optional<std::pair<std::string, std::string>> compare_files;

    int year = 0;
    std::optional<int> diff_year;
    std::string metric = "pagerank";
    std::string level = "country";
    int product = 0;
    std::optional<double> delta;
    std::optional<std::size_t> k;
    std::string countries = WTN_DEFAULT_SUBSET;
    std::string years_text;
    bool import_export = false;
    std::string order = "registry";
    std::string before_path;
    std::string after_path;

    auto year_opts = [&](CLI::App* cmd, bool with_diff) {
        cmd->add_option("--year", year, "Year to analyse")->required();
        if (with_diff) cmd->add_option("--diff-year", diff_year, "Report values of this year minus --year");
    };

    auto* rank = app.add_subcommand("rank", "PageRank/CheiRank/ImportRank/ExportRank indexes");
    year_opts(rank, false);
    rank->add_option("--metric", metric)->check(CLI::IsMember({"pagerank", "cheirank", "importrank", "exportrank"}));
    rank->add_option("--level", level)->check(CLI::IsMember({"node", "country", "product"}));
    rank->callback([&] {
        task = [&](Workspace& ws) {
            return std::pair{"rank_" + std::to_string(year) + "_" + metric + "_" + level,
                             rank_table(ws, year, parse_rank_kind(metric), parse_level(level))};
        };
    });

    auto* twod = app.add_subcommand("twodrank", "Countries ordered by 2DRank with their K and K*");
    year_opts(twod, false);
    twod->callback([&] {
        task = [&](Workspace& ws) { return std::pair{"twodrank_" + std::to_string(year), two_d_rank_table(ws, year)}; };
    });

    auto* balance = app.add_subcommand("balance", "PageRank-CheiRank and ImportRank-ExportRank trade balances");
    year_opts(balance, true);
    balance->add_option("--level", level)->check(CLI::IsMember({"country", "product"}));
    balance->callback([&] {
        task = [&](Workspace& ws) {
            return std::pair{"balance_" + std::to_string(year) + "_" + level + suffix(diff_year),
                             balance_table(ws, year, parse_level(level), diff_year)};
        };
    });

    auto* matrix = app.add_subcommand("balance-matrix", "Product x country trade balances");
    year_opts(matrix, true);
    matrix->add_flag("--import-export", import_export, "ImportRank-ExportRank balances instead");
    matrix->add_option("--order", order, "Column order")->check(CLI::IsMember({"registry", "2drank"}));
    matrix->callback([&] {
        task = [&](Workspace& ws) {
            return std::pair{"balance_matrix_" + std::to_string(year) + (import_export ? "_hat" : "") + suffix(diff_year),
                             balance_matrix_table(ws, year, import_export, diff_year, order == "2drank")};
        };
    });

    auto* sensitivity = app.add_subcommand("sensitivity", "Country balance sensitivity to a product's volume");
    year_opts(sensitivity, true);
    sensitivity->add_option("--product", product, "SITC code")->required();
    sensitivity->add_option("--delta", delta, "Finite-difference step");
    sensitivity->callback([&] {
        task = [&](Workspace& ws) {
            return std::pair{"sensitivity_" + std::to_string(year) + "_p" + std::to_string(product) + suffix(diff_year),
                             sensitivity_table(ws, year, product, diff_year, &err)};
        };
    });

    auto* regomax = app.add_subcommand("regomax", "Reduced Google matrix of one product for a country subset");
    year_opts(regomax, true);
    regomax->add_option("--product", product, "SITC code")->required();
    regomax->add_option("--countries", countries, "File or comma-separated list of country codes");
    regomax->callback([&] {
        task = [&](Workspace& ws) {
            const auto codes = parse_country_list(countries);
            return std::pair{"regomax_" + std::to_string(year) + "_p" + std::to_string(product) + suffix(diff_year),
                             regomax_table(ws, year, product, codes, diff_year)};
        };
    });

    auto* network = app.add_subcommand("network", "Strongest reduced-network links and their change between years");
    year_opts(network, true);
    network->add_option("--product", product, "SITC code")->required();
    network->add_option("--k", k, "Links kept per source country");
    network->add_option("--countries", countries, "File or comma-separated list of country codes");
    network->callback([&] {
        task = [&](Workspace& ws) {
            const auto codes = parse_country_list(countries);
            return std::pair{"network_" + std::to_string(year) + "_p" + std::to_string(product) + suffix(diff_year),
                             network_table(ws, year, diff_year, product, ws.config().k, codes)};
        };
    });

    auto* kendall = app.add_subcommand("kendall", "Kendall tau distances between yearly rankings");
    kendall->add_option("--metric", metric)->check(CLI::IsMember({"pagerank", "cheirank", "importrank", "exportrank"}));
    kendall->add_option("--years", years_text, "Comma-separated years")->required();
    kendall->add_option("--level", level)->check(CLI::IsMember({"node", "country", "product"}));
    kendall->callback([&] {
        task = [&](Workspace& ws) {
            const auto years = parse_years(years_text);
            std::string stem = "kendall_" + metric + "_" + level;
            for (const int y : years) stem += "_" + std::to_string(y);
            return std::pair{stem, kendall_table(ws, parse_rank_kind(metric), years, parse_level(level))};
        };
    });

    auto* stats = app.add_subcommand("stats", "Link count and total volume");
    year_opts(stats, true);
    stats->callback([&] {
        task = [&](Workspace& ws) {
            return std::pair{"stats_" + std::to_string(year) + suffix(diff_year), stats_table(ws, year, diff_year)};
        };
    });

    auto* compare = app.add_subcommand("compare", "Entrywise difference of two earlier CSV outputs (after - before)");
    compare->add_option("--before", before_path)->required();
    compare->add_option("--after", after_path)->required();
    compare->callback([&] { compare_files = std::pair{before_path, after_path}; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        RunConfig config = make_config(global);
        if (delta) config.delta = *delta;
        if (k) config.k = *k;

        std::string stem;
        report::Table table;
        if (compare_files) {
            auto load = [](const std::string& path) {
                std::ifstream in(path);
                if (!in) throw FileError(path, "missing input table");
                return report::read_csv(in);
            };
            table = compare_tables(load(compare_files->first), load(compare_files->second));
            stem = "compare_" + std::filesystem::path(compare_files->second).stem().string();
        } else {
            Workspace ws(config, &err);
            std::tie(stem, table) = task(ws);
        }

        std::ostringstream rendered;
        if (config.format == OutputFormat::json) {
            report::write_json(table, rendered);
        } else {
            report::write_csv(table, rendered);
        }
        if (config.out_dir.empty()) {
            out << rendered.str();
        } else {
            const std::string file = stem + (config.format == OutputFormat::json ? ".json" : ".csv");
            write_artifact(config.out_dir, file, rendered.str());
            err << "wrote " << (config.out_dir / file).string() << '\n';
        }
        return kExitOk;
    } catch (const FileError& e) {
        err << "error: " << e.what() << '\n';
        return kExitMissingFile;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

}  // namespace wtn::cli
