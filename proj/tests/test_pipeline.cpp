#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "wtn/error.hpp"
#include "wtn/pipeline.hpp"

using namespace wtn;
using fixtures::TempDir;

namespace {

class PipelineTest : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        dir_ = new TempDir("pipeline");
        fixtures::write_year_files(dir_->path(), {2018, 2020});
    }
    static void TearDownTestSuite() {
        delete dir_;
        dir_ = nullptr;
    }

    static RunConfig config() {
        RunConfig c;
        c.data = dir_->path();
        c.country_registry = WTN_TEST_DATA_DIR "/countries.csv";
        return c;
    }

    static TempDir* dir_;
};

TempDir* PipelineTest::dir_ = nullptr;

double number(const report::Cell& cell) { return std::get<double>(cell); }

}  // namespace

TEST(Config, EntriesAndValidation) {
    RunConfig c;
    apply_config_entry(c, "alpha", "0.85");
    apply_config_entry(c, "max_iter", "50");
    apply_config_entry(c, "k", "6");
    apply_config_entry(c, "format", "json");
    apply_config_entry(c, "data.2019", "x.csv");
    EXPECT_EQ(c.google.alpha, 0.85);
    EXPECT_EQ(c.power.max_iter, 50);
    EXPECT_EQ(c.k, 6u);
    EXPECT_EQ(c.format, OutputFormat::json);
    EXPECT_EQ(c.data_by_year.at(2019), "x.csv");
    EXPECT_THROW(apply_config_entry(c, "beta", "1"), ConfigError);
    EXPECT_THROW(apply_config_entry(c, "alpha", "half"), ConfigError);
    EXPECT_THROW(apply_config_entry(c, "format", "xml"), ConfigError);
    c.google.alpha = 1.0;
    EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Config, FileResolvesRelativePaths) {
    TempDir dir("config");
    {
        std::ofstream out(dir / "run.cfg");
        out << "# comment\nalpha = 0.4  # trailing\n\ndata = trade\ndata.2020 = y2020.csv\ndata.2018 = /abs/2018.csv\n"
               "country_registry = reg.csv\n";
    }
    RunConfig c;
    apply_config_file(c, dir / "run.cfg");
    EXPECT_EQ(c.google.alpha, 0.4);
    EXPECT_EQ(c.data, dir.path() / "trade");
    EXPECT_EQ(c.data_by_year.at(2020), dir.path() / "y2020.csv");
    EXPECT_EQ(c.data_by_year.at(2018), "/abs/2018.csv");
    EXPECT_EQ(c.country_registry, dir.path() / "reg.csv");

    {
        std::ofstream out(dir / "bad.cfg");
        out << "alpha 0.4\n";
    }
    EXPECT_THROW(apply_config_file(c, dir / "bad.cfg"), ConfigError);
    EXPECT_THROW(apply_config_file(c, dir / "absent.cfg"), FileError);
}

TEST(NetworkStats, EmptyAndSingleCell) {
    const auto empty = fixtures::tensor(3, 1, {});
    const auto s0 = summarize_network_stats(empty);
    EXPECT_EQ(s0.link_count, 0u);
    EXPECT_EQ(s0.total_volume, 0.0);
    const auto s1 = summarize_network_stats(fixtures::tensor(3, 1, {{0, 1, 2, 5.0}}));
    EXPECT_EQ(s1.link_count, 1u);
    EXPECT_EQ(s1.total_volume, 5.0);
}

TEST(CountryList, ParsesListOrFile) {
    EXPECT_EQ(parse_country_list("US, CN DE"), (std::vector<std::string>{"US", "CN", "DE"}));
    const auto top20 = parse_country_list(WTN_TEST_DATA_DIR "/top20_2018.txt");
    EXPECT_EQ(top20.size(), 20u);
    EXPECT_EQ(top20.front(), "CN");
    EXPECT_THROW(parse_country_list(" , "), ConfigError);
}

TEST_F(PipelineTest, DataPathLookup) {
    Workspace ws(config());
    EXPECT_EQ(ws.data_path(2018), dir_->path() / "2018.csv");
    EXPECT_THROW(ws.tensor(2019), FileError);
    RunConfig c = config();
    c.data.clear();
    Workspace none(c);
    EXPECT_THROW(none.data_path(2018), ConfigError);
}

TEST_F(PipelineTest, YearWithoutTradeIsDataError) {
    RunConfig c = config();
    c.data = dir_->path() / "2018.csv";
    Workspace ws(c);
    EXPECT_THROW(ws.tensor(2020), DataError);
}

TEST_F(PipelineTest, RankTableMatchesLibrary) {
    Workspace ws(config());
    const auto table = rank_table(ws, 2018, RankKind::pagerank, Level::country);
    ASSERT_EQ(table.rows.size(), 194u);
    EXPECT_EQ(table.header, (std::vector<std::string>{"rank", "entity", "probability"}));
    const auto& p = ws.analysis(2018).pagerank;
    const auto index = sort_index(p, Level::country);
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        const std::size_t c = index.ordering()[k];
        EXPECT_EQ(std::get<std::int64_t>(table.rows[k][0]), static_cast<std::int64_t>(k + 1));
        EXPECT_EQ(std::get<std::string>(table.rows[k][1]), ws.countries().at(c).iso2);
        EXPECT_EQ(number(table.rows[k][2]), p.country_probs()[static_cast<Eigen::Index>(c)]);
    }
    const auto nodes = rank_table(ws, 2018, RankKind::exportrank, Level::node);
    EXPECT_EQ(nodes.rows.size(), 1940u);
    EXPECT_NE(std::get<std::string>(nodes.rows[0][1]).find(':'), std::string::npos);
}

TEST_F(PipelineTest, BalanceTablesAndDiff) {
    Workspace ws(config());
    const auto b18 = balance_table(ws, 2018, Level::country);
    const auto b20 = balance_table(ws, 2020, Level::country);
    const auto diff = balance_table(ws, 2018, Level::country, 2020);
    ASSERT_EQ(diff.rows.size(), 194u);
    for (std::size_t c = 0; c < 194; ++c) {
        EXPECT_NEAR(number(diff.rows[c][1]), number(b20.rows[c][1]) - number(b18.rows[c][1]), 1e-15);
    }
    const auto products = balance_table(ws, 2018, Level::product);
    ASSERT_EQ(products.rows.size(), 10u);
    for (const auto& row : products.rows) EXPECT_LE(std::abs(number(row[2])), 1e-14);
    EXPECT_THROW(balance_table(ws, 2018, Level::node), ConfigError);
}

TEST_F(PipelineTest, BalanceMatrixRowsSumToProductBalance) {
    Workspace ws(config());
    const auto matrix = balance_matrix_table(ws, 2018, false);
    ASSERT_EQ(matrix.rows.size(), 10u);
    ASSERT_EQ(matrix.header.size(), 195u);
    const auto& b = ws.analysis(2018).balances;
    for (std::size_t p = 0; p < 10; ++p) {
        double sum = 0.0;
        for (std::size_t c = 1; c < matrix.rows[p].size(); ++c) sum += number(matrix.rows[p][c]);
        EXPECT_NEAR(sum, b.product[static_cast<Eigen::Index>(p)], 1e-12);
    }
    const auto ordered = balance_matrix_table(ws, 2018, true, std::nullopt, true);
    const auto two_d = two_d_rank_table(ws, 2018);
    EXPECT_EQ(ordered.header[1], std::get<std::string>(two_d.rows[0][3]));
}

TEST_F(PipelineTest, TwoDRankTableConsistent) {
    Workspace ws(config());
    const auto t = two_d_rank_table(ws, 2018);
    ASSERT_EQ(t.rows.size(), 194u);
    std::int64_t previous = 0;
    for (const auto& row : t.rows) {
        const auto k = std::get<std::int64_t>(row[1]);
        const auto ks = std::get<std::int64_t>(row[2]);
        EXPECT_GE(std::max(k, ks), previous);
        previous = std::max(k, ks);
    }
}

TEST_F(PipelineTest, RegomaxAndNetwork) {
    Workspace ws(config());
    const auto codes = parse_country_list(WTN_TEST_DATA_DIR "/top20_2018.txt");
    const auto gr = regomax_table(ws, 2018, 0, codes);
    ASSERT_EQ(gr.rows.size(), 20u);
    ASSERT_EQ(gr.header.size(), 21u);
    for (std::size_t b = 1; b <= 20; ++b) {
        double sum = 0.0;
        for (const auto& row : gr.rows) sum += number(row[b]);
        EXPECT_NEAR(sum, 1.0, 1e-10);
    }
    const auto net = network_table(ws, 2018, std::nullopt, 0, 4, codes);
    EXPECT_EQ(net.rows.size(), 80u);
    const auto diff = network_table(ws, 2018, 2020, 0, 4, codes);
    std::size_t appearing = 0, disappearing = 0;
    for (const auto& row : diff.rows) {
        const auto& cls = std::get<std::string>(row[2]);
        appearing += cls == "appearing";
        disappearing += cls == "disappearing";
    }
    EXPECT_EQ(appearing, disappearing);
    EXPECT_EQ(diff.rows.size(), 80u + appearing);
    EXPECT_THROW(regomax_table(ws, 2018, 42, codes), ConfigError);
}

TEST_F(PipelineTest, KendallAndStats) {
    Workspace ws(config());
    const std::vector<int> years{2018, 2020};
    const auto k = kendall_table(ws, RankKind::pagerank, years, Level::country);
    ASSERT_EQ(k.rows.size(), 1u);
    const double d = number(k.rows[0][2]);
    EXPECT_GT(d, 0.0);
    EXPECT_LT(d, 1.0);
    const std::vector<int> one{2018};
    EXPECT_THROW(kendall_table(ws, RankKind::pagerank, one, Level::country), ConfigError);

    const auto stats = stats_table(ws, 2018, 2020);
    ASSERT_EQ(stats.rows.size(), 2u);
    const auto links18 = static_cast<double>(std::get<std::int64_t>(stats.rows[0][1]));
    const auto links20 = static_cast<double>(std::get<std::int64_t>(stats.rows[1][1]));
    EXPECT_NEAR(number(stats.rows[1][3]), links20 / links18 - 1.0, 1e-15);
}

TEST_F(PipelineTest, SensitivityTable) {
    Workspace ws(config());
    std::ostringstream log;
    const auto t = sensitivity_table(ws, 2018, 3, std::nullopt, &log);
    ASSERT_EQ(t.rows.size(), 194u);
    EXPECT_NE(log.str().find("Richardson gap"), std::string::npos);
    EXPECT_THROW(sensitivity_table(ws, 2018, 11), ConfigError);
}

TEST(CompareTables, SubtractsNumericColumns) {
    report::TextTable before{{"country", "B", "note"}, {{"US", "0.5", "x"}, {"CN", "-0.25", "y"}}};
    report::TextTable after{{"country", "B", "note"}, {{"CN", "0.25", "y"}, {"US", "0.25", "x"}}};
    const auto d = compare_tables(before, after);
    ASSERT_EQ(d.rows.size(), 2u);
    EXPECT_EQ(std::get<std::string>(d.rows[0][0]), "CN");
    EXPECT_EQ(std::get<double>(d.rows[0][1]), 0.5);
    EXPECT_EQ(std::get<double>(d.rows[1][1]), -0.25);
    after.rows[0][2] = "z";
    EXPECT_THROW(compare_tables(before, after), ConfigError);
    report::TextTable other{{"country", "C", "note"}, {}};
    EXPECT_THROW(compare_tables(before, other), ConfigError);
}
