#include "mftk/error.h"
#include "mftk/returns_io.h"
#include "mftk/synth.h"

#include <gtest/gtest.h>

#include <cstring>
#include <limits>
#include <sstream>

using namespace mftk;

namespace {

ReturnSeries sample_series() {
    auto values = synth::generate_gaussian_iid(1000, 1e-3, 5);
    values[3] = std::numeric_limits<double>::denorm_min();
    values[4] = -0.0;
    values[5] = 0.1;
    values[6] = 1.0 / 3.0;
    return partition_into_days(values, 333, 15);
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void expect_identical(const ReturnSeries& a, const ReturnSeries& b) {
    ASSERT_EQ(a.days.size(), b.days.size());
    EXPECT_EQ(a.sampling_interval_s, b.sampling_interval_s);
    for (std::size_t d = 0; d < a.days.size(); ++d) {
        EXPECT_EQ(a.days[d].date, b.days[d].date);
        ASSERT_EQ(a.days[d].returns.size(), b.days[d].returns.size());
        for (std::size_t i = 0; i < a.days[d].returns.size(); ++i)
            EXPECT_TRUE(bit_equal(a.days[d].returns[i], b.days[d].returns[i])) << "day " << d << " index " << i;
    }
}

}  // namespace

TEST(Series, PartitionIntoDays) {
    const std::vector<double> v(10, 1.0);
    const auto s = partition_into_days(v, 4, 15);
    ASSERT_EQ(s.days.size(), 3u);
    EXPECT_EQ(s.days[2].returns.size(), 2u);
    EXPECT_EQ(s.size(), 10u);
    EXPECT_FALSE(s.uniform());
    EXPECT_LT(s.days[0].date, s.days[1].date);
    EXPECT_THROW(partition_into_days(v, 0, 15), InputError);
}

TEST(Series, DateRoundTrip) {
    const auto d = parse_date("2009-02-28");
    EXPECT_EQ(format_date(d), "2009-02-28");
    EXPECT_THROW(parse_date("2009-02-30"), InputError);
    EXPECT_THROW(parse_date("20090228"), InputError);
}

TEST(ReturnsIo, TextRoundTripIsBitExact) {
    const auto s = sample_series();
    std::stringstream buf;
    io::write_returns(buf, s, io::ReturnsFormat::Text, {"generated by a test"});
    expect_identical(s, io::read_returns(buf));
}

TEST(ReturnsIo, CsvRoundTripIsBitExact) {
    const auto s = sample_series();
    std::stringstream buf;
    io::write_returns(buf, s, io::ReturnsFormat::Csv, {"generated by a test"});
    expect_identical(s, io::read_returns(buf));
}

TEST(ReturnsIo, TextLayout) {
    ReturnSeries s;
    s.sampling_interval_s = 15;
    s.days.push_back({parse_date("2009-01-02"), {0.5, -0.25}});
    std::stringstream buf;
    io::write_returns(buf, s, io::ReturnsFormat::Text);
    const auto text = buf.str();
    EXPECT_NE(text.find("# DATE 2009-01-02\n0.5\n-0.25\n"), std::string::npos);
}

TEST(ReturnsIo, FormatForPath) {
    EXPECT_EQ(io::format_for_path("a/b.csv"), io::ReturnsFormat::Csv);
    EXPECT_EQ(io::format_for_path("a/b.txt"), io::ReturnsFormat::Text);
}

TEST(ReturnsIo, BadValueReportsLine) {
    std::stringstream buf("# mftk-returns v1\n# DATE 2009-01-02\n0.1\nabc\n");
    try {
        io::read_returns(buf);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
    }
}

TEST(ReturnsIo, NonFiniteRejected) {
    std::stringstream buf("# mftk-returns v1\n# DATE 2009-01-02\ninf\n");
    EXPECT_THROW(io::read_returns(buf), ParseError);
}

TEST(ReturnsIo, FormatDoubleShortest) {
    EXPECT_EQ(io::format_double(0.1), "0.1");
    EXPECT_EQ(io::format_double(2.0), "2");
    EXPECT_EQ(std::stod(io::format_double(1.0 / 3.0)), 1.0 / 3.0);
}
