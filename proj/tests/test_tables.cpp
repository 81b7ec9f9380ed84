#include "mftk/tables.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace mftk;

TEST(Tables, ExponentsHeaderCommentsAndNan) {
    mfdfa::ScalingExponents e;
    e.q = {-1, 2};
    e.h = {0.75, std::nan("")};
    e.tau = {-1.75, std::nan("")};
    e.h_stderr = {0.01, std::nan("")};
    e.r2 = {0.999, std::nan("")};
    e.intercept = {-2.5, std::nan("")};
    e.fit_ok = {true, false};
    e.fit_min_scale = 16;
    e.fit_max_scale = 4096;
    std::ostringstream out;
    io::write_exponents_csv(out, e, io::config_comments({{"poly_order", "5"}, {"seed", "3"}}));
    EXPECT_EQ(out.str(),
              "# config poly_order=5\n# config seed=3\n# fit_scale_range: 16..4096\n"
              "q,h,h_stderr,tau,r2,intercept,fit_ok\n"
              "-1,0.75,0.01,-1.75,0.999,-2.5,1\n"
              "2,nan,nan,nan,nan,nan,0\n");
}

TEST(Tables, FluctuationRowsAreQMajor) {
    mfdfa::FluctuationSurface s;
    s.q = {-2, 2};
    s.scales = {16, 32};
    s.values = {1, 2, 3, 4};
    s.segments = {10, 4};
    s.zero_segments = {1, 0};
    std::ostringstream out;
    io::write_fluctuation_csv(out, s);
    EXPECT_EQ(out.str(), "q,s,F,segments,zero_segments\n-2,16,1,10,1\n-2,32,2,4,0\n2,16,3,10,1\n2,32,4,4,0\n");
}

TEST(Tables, CorrelogramAndProfile) {
    correl::Correlogram c;
    c.acf = {1.0, 0.125};
    c.n = 400;
    c.band = 0.098;
    c.transform = correl::Transform::Absolute;
    std::ostringstream out;
    io::write_correlogram_csv(out, c);
    EXPECT_EQ(out.str(), "# transform: abs\n# n: 400\nlag,acf,band\n0,1,0.098\n1,0.125,0.098\n");

    correl::VolatilityProfile p;
    p.mean_abs_return = {0.5, 0.25};
    p.days_used = 7;
    std::ostringstream prof;
    io::write_volatility_profile_csv(prof, p);
    EXPECT_EQ(prof.str(), "# days: 7\nslot,mean_abs_return\n0,0.5\n1,0.25\n");
}

TEST(Tables, SpectrumEnvelopeEnsemble) {
    spectrum::SingularitySpectrum s;
    s.q = {0};
    s.alpha = {0.5};
    s.f = {1};
    std::ostringstream a, b, c;
    io::write_spectrum_csv(a, s);
    io::write_envelope_csv(b, {{0.4, 0.9, 1.5}});
    io::write_ensemble_csv(c, {0.1, 0.2});
    EXPECT_EQ(a.str(), "q,alpha,f\n0,0.5,1\n");
    EXPECT_EQ(b.str(), "alpha,y,argmin_q\n0.4,0.9,1.5\n");
    EXPECT_EQ(c.str(), "member,d\n0,0.1\n1,0.2\n");
}

TEST(Tables, SummaryJsonUsesNullForNonFinite) {
    spectrum::SpectrumSummary s;
    s.alpha_min = 0.3;
    s.alpha_max = 0.7;
    s.alpha0 = std::nan("");
    s.width = 0.4;
    const auto j = io::to_json(s);
    EXPECT_EQ(j["width"], 0.4);
    EXPECT_TRUE(j["alpha0"].is_null());
    EXPECT_EQ(j["alpha0_refined"], false);
    EXPECT_EQ(j.begin().key(), "alpha_min");
}

TEST(Tables, ConfigEchoKeepsOrder) {
    const io::ConfigEcho echo{{"z", "1"}, {"a", "2"}};
    EXPECT_EQ(io::to_json(echo).dump(), R"({"z":"1","a":"2"})");
    EXPECT_EQ(io::config_comments(echo), (io::Comments{"config z=1", "config a=2"}));
}
