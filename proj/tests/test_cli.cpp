#include "cli/app.h"
#include "cli/digest.h"
#include "mftk/error.h"
#include "mftk/returns_io.h"
#include "oracles/oracles.h"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("mftk_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(std::vector<std::string> args) {
        args.insert(args.begin(), "mftk");
        std::ostringstream out, err;
        const int rc = mftk::cli::run(args, out, err);
        out_ = out.str();
        err_ = err.str();
        return rc;
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    void write(const std::string& name, const std::string& content) const {
        std::ofstream(path(name), std::ios::binary) << content;
    }

    // Value of "key: value" in the last command's stdout.
    double reported(const std::string& key) const {
        const auto pos = out_.find(key + ": ");
        if (pos == std::string::npos) throw std::runtime_error("missing " + key + " in: " + out_);
        return std::stod(out_.substr(pos + key.size() + 2));
    }

    fs::path dir_;
    std::string out_, err_;
};

std::string two_day_ticks() {
    return "2009-01-02T09:00:00,9000\n2009-01-02T12:00:03,9010.5\n2009-01-02T17:00:00,9005\n"
           "2009-01-05T09:00:10,9100\n2009-01-05T10:30:00,9090\n";
}

}  // namespace

TEST(CliParsing, QGridArithmetic) {
    const auto q = mftk::cli::parse_q_grid("-5:5:0.25");
    ASSERT_EQ(q.size(), 41u);
    EXPECT_EQ(q.front(), -5.0);
    EXPECT_EQ(q.back(), 5.0);
    EXPECT_EQ(mftk::cli::parse_q_grid("-1,0,2"), (std::vector<double>{-1, 0, 2}));
    EXPECT_THROW(mftk::cli::parse_q_grid("1:2"), mftk::InputError);
    EXPECT_THROW(mftk::cli::parse_q_grid("a,b"), mftk::InputError);
}

TEST(CliParsing, Scales) {
    EXPECT_EQ(mftk::cli::parse_scales("dyadic:16:128"), (std::vector<std::size_t>{16, 32, 64, 128}));
    EXPECT_EQ(mftk::cli::parse_scales("16,20,40"), (std::vector<std::size_t>{16, 20, 40}));
    EXPECT_EQ(mftk::cli::parse_scales("log:16:1024:7").size(), 7u);
    EXPECT_TRUE(mftk::cli::parse_scales("").empty());
    EXPECT_THROW(mftk::cli::parse_scales("weird:1"), mftk::InputError);
}

TEST(Digest, KnownVector) {
    EXPECT_EQ(mftk::cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(CliTest, IngestTwoDays) {
    write("ticks.csv", two_day_ticks());
    ASSERT_EQ(run({"ingest", "--input", path("ticks.csv"), "--out", path("r.txt")}), 0) << err_;
    EXPECT_EQ(reported("days"), 2);
    const auto series = mftk::io::read_returns_file(path("r.txt"));
    ASSERT_EQ(series.days.size(), 2u);
    EXPECT_EQ(mftk::format_date(series.days[1].date), "2009-01-05");
    EXPECT_EQ(series.sampling_interval_s, 15);
    EXPECT_TRUE(fs::exists(path("r.txt.manifest.json")));
    EXPECT_NE(err_.find("short session"), std::string::npos);  // second day starts after open
}

TEST_F(CliTest, IngestStrictNamesMalformedLine) {
    write("ticks.csv", "2009-01-02T09:00:00,9000\n2009-01-02T09:00:05;oops\n2009-01-02T09:01:00,9001\n");
    EXPECT_NE(run({"ingest", "--strict", "--input", path("ticks.csv"), "--out", path("r.txt")}), 0);
    EXPECT_NE(err_.find("line 2"), std::string::npos) << err_;
    EXPECT_EQ(run({"ingest", "--input", path("ticks.csv"), "--out", path("r.txt")}), 0) << err_;
    EXPECT_NE(err_.find("line 2"), std::string::npos);
}

TEST_F(CliTest, IngestMultiYearOneTickPerDay) {
    // One tick per day at the open; carry-forward fills the grid.
    std::string ticks;
    auto date = std::chrono::sys_days{std::chrono::year{2007} / 1 / 1};
    for (int d = 0; d < 510; ++d, date += std::chrono::days{1})
        ticks += mftk::format_date(std::chrono::year_month_day{date}) + "T09:00:00,10000\n";
    write("ticks.csv", ticks);

    // Default session 09:00-17:30 with the 30 s cutoff.
    ASSERT_EQ(run({"ingest", "--input", path("ticks.csv"), "--out", path("a.txt")}), 0) << err_;
    const auto per_day = oracle::count_grid_slots(9 * 3600, 17 * 3600 + 1800, 30, 15) - 1;
    EXPECT_EQ(reported("days"), 510);
    EXPECT_EQ(reported("returns"), static_cast<double>(510 * per_day));

    // A cutoff that leaves 2032 grid prices per day reproduces 510 x 2031.
    ASSERT_EQ(run({"ingest", "--input", path("ticks.csv"), "--out", path("b.txt"), "--cutoff", "135"}), 0) << err_;
    EXPECT_EQ(reported("returns"), 1035810);
}

TEST_F(CliTest, GenerateRequiresSeed) {
    EXPECT_EQ(run({"generate", "--model", "iid", "--out", path("x.txt")}), 1);
    EXPECT_NE(err_.find("--seed"), std::string::npos);
    EXPECT_EQ(run({"generate", "--model", "levy", "--seed", "1", "--out", path("x.txt")}), 1);
}

TEST_F(CliTest, AnalyzeCascadeAndFgn) {
    ASSERT_EQ(run({"generate", "--model", "cascade", "--levels", "16", "--multiplier", "0.6", "--seed", "1", "--out",
                   path("c.txt")}),
              0);
    ASSERT_EQ(run({"analyze", "--input", path("c.txt"), "--out-prefix", path("c")}), 0) << err_;
    EXPECT_GT(reported("width"), 0.3);
    for (const char* suffix : {".exponents.csv", ".fluctuation.csv", ".spectrum.csv", ".envelope.csv", ".summary.json",
                               ".manifest.json"})
        EXPECT_TRUE(fs::exists(path(std::string("c") + suffix))) << suffix;

    ASSERT_EQ(run({"generate", "--model", "fgn", "--hurst", "0.5", "--n", "65536", "--seed", "2", "--out", path("f.txt")}), 0);
    ASSERT_EQ(run({"analyze", "--input", path("f.txt"), "--out-prefix", path("f")}), 0) << err_;
    EXPECT_LT(reported("width"), 0.15);

    const auto summary = nlohmann::json::parse(slurp(path("f.summary.json")));
    EXPECT_LT(summary["spectrum"]["width"].get<double>(), 0.15);
    EXPECT_EQ(summary["config"]["poly_order"], "5");

    std::istringstream table(slurp(path("f.exponents.csv")));
    std::string line;
    std::size_t rows = 0;
    bool header = false;
    while (std::getline(table, line)) {
        if (line.rfind('#', 0) == 0) continue;
        if (!header) {
            EXPECT_EQ(line, "q,h,h_stderr,tau,r2,intercept,fit_ok");
            header = true;
            continue;
        }
        ++rows;
    }
    EXPECT_EQ(rows, 41u);
}

TEST_F(CliTest, DegenerateInputExitsWithTwo) {
    std::string text = "# DATE 2009-01-02\n";
    for (int i = 0; i < 4096; ++i) text += "0\n";
    write("flat.txt", text);
    EXPECT_EQ(run({"analyze", "--input", path("flat.txt"), "--out-prefix", path("z")}), 2) << err_;
    EXPECT_FALSE(err_.empty());
}

TEST_F(CliTest, SurrogateReports) {
    ASSERT_EQ(run({"generate", "--model", "cascade", "--levels", "16", "--seed", "1", "--out", path("c.txt")}), 0);
    ASSERT_EQ(run({"surrogate", "--input", path("c.txt"), "--kind", "full", "-M", "100", "--seed", "5", "--out",
                   path("s.json"), "--ensemble-csv", path("s.csv"), "--jobs", "2"}),
              0)
        << err_;
    const auto j = nlohmann::json::parse(slurp(path("s.json")));
    EXPECT_LE(j["report"]["p_value"].get<double>(), 1.0 / 101.0 + 1e-15);
    EXPECT_EQ(j["report"]["p_value_display"], "< 1/100");
    EXPECT_EQ(j["report"]["ensemble_size"], 100);
    EXPECT_EQ(j["config"]["kind"], "full");
    EXPECT_EQ(j["config"]["seed"], "5");
    EXPECT_TRUE(fs::exists(path("s.csv")));
}

TEST_F(CliTest, SurrogateDailyNeedsTwoDays) {
    ASSERT_EQ(run({"generate", "--model", "iid", "--n", "4096", "--day-length", "5000", "--seed", "1", "--out",
                   path("one.txt")}),
              0);
    EXPECT_EQ(run({"surrogate", "--input", path("one.txt"), "--kind", "daily", "-M", "100", "--seed", "1", "--out",
                   path("s.json")}),
              1);
    EXPECT_NE(err_.find("at least 2 days"), std::string::npos) << err_;
}

TEST_F(CliTest, AcfTables) {
    ASSERT_EQ(run({"generate", "--model", "iid", "--n", "100000", "--seed", "3", "--out", path("i.txt")}), 0);
    ASSERT_EQ(run({"acf", "--input", path("i.txt"), "--out", path("i.csv"), "--max-lag", "100"}), 0) << err_;
    EXPECT_LE(reported("outside_band_lags_1_100"), 0.15);
    const auto text = slurp(path("i.csv"));
    const auto header = text.find("lag,acf,band\n");
    ASSERT_NE(header, std::string::npos);
    const auto row0 = text.substr(header + 13, text.find('\n', header + 13) - header - 13);
    EXPECT_EQ(row0, "0,1," + mftk::io::format_double(1.96 / std::sqrt(100000.0)));

    ASSERT_EQ(run({"generate", "--model", "cascade", "--levels", "16", "--seed", "1", "--out", path("c.txt")}), 0);
    ASSERT_EQ(run({"acf", "--input", path("c.txt"), "--out", path("c.csv"), "--transform", "abs", "--max-lag", "100"}), 0);
    EXPECT_GT(reported("outside_band_lags_1_100"), 0.5);
}

TEST_F(CliTest, AcfDailyPeaksAndProfile) {
    ASSERT_EQ(run({"generate", "--model", "iid", "--n", "20000", "--day-length", "400", "--seed", "3", "--out",
                   path("i.txt")}),
              0);
    ASSERT_EQ(run({"acf", "--input", path("i.txt"), "--out", path("a.csv"), "--transform", "abs", "--peaks-out",
                   path("p.csv")}),
              0)
        << err_;
    EXPECT_NE(slurp(path("p.csv")).find("multiple,lag,acf,baseline,prominence"), std::string::npos);
    EXPECT_NE(err_.find("exceeds N/2"), std::string::npos);  // 30 days of lags do not fit in 50 days

    ASSERT_EQ(run({"profile", "--input", path("i.txt"), "--out", path("v.csv")}), 0) << err_;
    EXPECT_EQ(reported("slots"), 400);
    EXPECT_NE(slurp(path("v.csv")).find("slot,mean_abs_return"), std::string::npos);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
    ASSERT_EQ(run({"generate", "--model", "iid", "--n", "8192", "--seed", "1", "--out", path("i.txt")}), 0);
    write("cfg.toml", "[analyze]\norder = 3\nq-grid = \"-2:2:1\"\n");
    ASSERT_EQ(run({"--config", path("cfg.toml"), "analyze", "--input", path("i.txt"), "--out-prefix", path("a")}), 0)
        << err_;
    const auto a = slurp(path("a.exponents.csv"));
    EXPECT_NE(a.find("# config poly_order=3\n"), std::string::npos);
    EXPECT_NE(a.find("# config q_grid=-2,-1,0,1,2\n"), std::string::npos);
    ASSERT_EQ(run({"--config", path("cfg.toml"), "analyze", "--input", path("i.txt"), "--out-prefix", path("b"),
                   "--order", "4"}),
              0);
    EXPECT_NE(slurp(path("b.exponents.csv")).find("# config poly_order=4\n"), std::string::npos);
}

TEST_F(CliTest, ByteIdenticalReruns) {
    ASSERT_EQ(run({"generate", "--model", "fgn", "--hurst", "0.7", "--n", "16384", "--seed", "9", "--out", path("g1.txt")}), 0);
    ASSERT_EQ(run({"generate", "--model", "fgn", "--hurst", "0.7", "--n", "16384", "--seed", "9", "--out", path("g2.txt")}), 0);
    EXPECT_EQ(slurp(path("g1.txt")), slurp(path("g2.txt")));

    ASSERT_EQ(run({"analyze", "--input", path("g1.txt"), "--out-prefix", path("r1"), "--jobs", "1"}), 0);
    ASSERT_EQ(run({"analyze", "--input", path("g2.txt"), "--out-prefix", path("r2"), "--jobs", "3"}), 0);
    for (const char* suffix : {".exponents.csv", ".fluctuation.csv", ".spectrum.csv", ".envelope.csv", ".summary.json"})
        EXPECT_EQ(slurp(path(std::string("r1") + suffix)), slurp(path(std::string("r2") + suffix))) << suffix;

    for (const char* out : {"s1.json", "s2.json"})
        ASSERT_EQ(run({"surrogate", "--input", path("g1.txt"), "--kind", "daily", "-M", "100", "--seed", "4", "--out",
                       path(out), "--q-grid", "-2:2:1"}),
                  0)
            << err_;
    EXPECT_EQ(slurp(path("s1.json")), slurp(path("s2.json")));
}

TEST_F(CliTest, UsageErrorsExitWithOne) {
    EXPECT_EQ(run({}), 1);
    EXPECT_EQ(run({"analyze"}), 1);
    EXPECT_EQ(run({"analyze", "--input", path("missing.txt"), "--out-prefix", path("x")}), 1);
    EXPECT_EQ(run({"--help"}), 0);
}
