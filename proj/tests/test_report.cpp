#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "wtn/csv.hpp"
#include "wtn/error.hpp"
#include "wtn/report.hpp"

using namespace wtn;

TEST(FormatNumber, TwelveSignificantDigits) {
    EXPECT_EQ(report::format_number(0.1 + 0.2), "0.3");
    EXPECT_EQ(report::format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(report::format_number(123456789012345.0), "1.23456789012e+14");
    EXPECT_EQ(report::format_number(2.0), "2");
    EXPECT_EQ(report::format_number(-0.0), "0");
    EXPECT_EQ(report::format_number(-1.5e-7), "-1.5e-07");
}

TEST(WriteCsv, HeaderRowsAndQuoting) {
    report::Table t{{"a", "b", "c"}, {{std::string("x,y"), 0.25, std::int64_t{7}}}};
    std::ostringstream out;
    report::write_csv(t, out);
    EXPECT_EQ(out.str(), "a,b,c\n\"x,y\",0.25,7\n");
}

TEST(WriteCsv, RoundTripsThroughReader) {
    report::Table t{{"country", "B"}, {{std::string("US"), -0.125}, {std::string("Say \"hi\""), 1e-20}}};
    std::ostringstream out;
    report::write_csv(t, out);
    std::istringstream in(out.str());
    const auto back = report::read_csv(in);
    EXPECT_EQ(back.header, t.header);
    ASSERT_EQ(back.rows.size(), 2u);
    EXPECT_EQ(back.rows[1][0], "Say \"hi\"");
    EXPECT_EQ(back.rows[0][1], "-0.125");
}

TEST(WriteJson, ArrayOfObjectsInHeaderOrder) {
    report::Table t{{"rank", "entity", "probability"}, {{std::int64_t{1}, std::string("US"), 1.0 / 3.0}}};
    std::ostringstream out;
    report::write_json(t, out);
    const auto doc = nlohmann::ordered_json::parse(out.str());
    ASSERT_TRUE(doc.is_array());
    ASSERT_EQ(doc.size(), 1u);
    EXPECT_EQ(doc[0].begin().key(), "rank");
    EXPECT_EQ(doc[0]["rank"], 1);
    EXPECT_EQ(doc[0]["entity"], "US");
    EXPECT_EQ(doc[0]["probability"].get<double>(), 0.333333333333);
}

TEST(ReadCsv, EmptyInputIsAnError) {
    std::istringstream in("");
    EXPECT_THROW(report::read_csv(in), ParseError);
}

TEST(SplitLine, QuotesAndWhitespace) {
    const auto fields = csv::split_line(" a , \"b, c\" ,\"d\"\"e\"\r");
    ASSERT_EQ(fields.size(), 3u);
    EXPECT_EQ(fields[0], "a");
    EXPECT_EQ(fields[1], "b, c");
    EXPECT_EQ(fields[2], "d\"e");
    EXPECT_EQ(csv::split_line("x,,y").size(), 3u);
}
