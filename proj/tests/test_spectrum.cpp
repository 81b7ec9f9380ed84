#include "mftk/error.h"
#include "mftk/mfdfa.h"
#include "mftk/spectrum.h"
#include "mftk/synth.h"
#include "oracles/oracles.h"

#include <gtest/gtest.h>

#include <cmath>

using namespace mftk;
using namespace mftk::spectrum;

namespace {

std::vector<double> cascade_tau(const std::vector<double>& q, double a = 0.6) {
    std::vector<double> tau;
    for (double v : q) tau.push_back(synth::analytic_tau_cascade(a, v));
    return tau;
}

}  // namespace

TEST(Legendre, LinearTauCollapsesToPoint) {
    const auto q = mfdfa::default_q_grid();
    std::vector<double> tau;
    for (double v : q) tau.push_back(0.5 * v - 1.0);
    const auto s = legendre_points(q, tau);
    for (std::size_t i = 0; i < q.size(); ++i) {
        EXPECT_NEAR(s.alpha[i], 0.5, 1e-12);
        EXPECT_NEAR(s.f[i], 1.0, 1e-12);
    }
    EXPECT_LE(s.summary.width, 1e-12);
    EXPECT_TRUE(s.nonconcave_q.empty());
}

TEST(Legendre, CascadeAlphaZeroAndPeak) {
    const auto q = mfdfa::default_q_grid();
    const auto s = legendre_points(q, cascade_tau(q));
    // q = 0 gives the peak f = 1 at the mean of -log2 a and -log2 (1 - a).
    const double peak = -(std::log2(0.6) + std::log2(0.4)) / 2.0;
    EXPECT_NEAR(s.alpha[20], peak, 2e-3);
    EXPECT_DOUBLE_EQ(s.f[20], 1.0);
    EXPECT_NEAR(s.summary.f_max, 1.0, 1e-3);
    EXPECT_NEAR(s.summary.alpha0, peak, 5e-3);
    // q = 1 sits on the diagonal f = alpha at the entropy.
    const double entropy = -(0.6 * std::log2(0.6) + 0.4 * std::log2(0.4));
    EXPECT_NEAR(s.alpha[24], entropy, 2e-3);
    EXPECT_NEAR(s.f[24], s.alpha[24], 1e-12);
    EXPECT_TRUE(s.nonconcave_q.empty());
}

TEST(Legendre, InteriorAlphaMatchesAnalyticDerivative) {
    const auto q = mfdfa::default_q_grid();
    const auto s = legendre_points(q, cascade_tau(q));
    for (std::size_t i = 1; i + 1 < q.size(); ++i)
        EXPECT_NEAR(s.alpha[i], synth::analytic_alpha_cascade(0.6, q[i]), 5e-3) << "q=" << q[i];
}

TEST(Legendre, GridEndpointsFollowAnalyticDerivative) {
    // One-sided differences at the ends: alpha_min ~ alpha(5), alpha_max ~ alpha(-5).
    const auto q = mfdfa::default_q_grid();
    const auto s = legendre_points(q, cascade_tau(q));
    EXPECT_NEAR(s.summary.alpha_min, oracle::cascade_alpha_numeric(0.6, 5.0), 0.01);
    EXPECT_NEAR(s.summary.alpha_max, oracle::cascade_alpha_numeric(0.6, -5.0), 0.01);
    EXPECT_NEAR(oracle::cascade_alpha_numeric(0.6, 5.0), 0.805, 1e-3);
    EXPECT_NEAR(oracle::cascade_alpha_numeric(0.6, -5.0), 1.254, 1e-3);
}

TEST(Legendre, NonUniformGrid) {
    const std::vector<double> q{-4, -2.5, -1, 0, 0.3, 1, 2, 3.7, 5};
    const auto s = legendre_points(q, cascade_tau(q));
    for (std::size_t i = 1; i + 1 < q.size(); ++i)
        EXPECT_NEAR(s.alpha[i], synth::analytic_alpha_cascade(0.6, q[i]), 0.03) << "q=" << q[i];
    // Exact for quadratics on any grid.
    std::vector<double> tau;
    for (double v : q) tau.push_back(-0.01 * v * v + 0.6 * v - 1.0);
    const auto p = legendre_points(q, tau);
    for (std::size_t i = 1; i + 1 < q.size(); ++i) EXPECT_NEAR(p.alpha[i], -0.02 * q[i] + 0.6, 1e-12);
}

TEST(Legendre, ReconstructionIdentity) {
    const auto q = mfdfa::default_q_grid();
    const auto x = synth::generate_gaussian_iid(1 << 14, 1.0, 3);
    const auto a = mfdfa::analyze(x, {});
    const auto s = legendre_points(a.exponents);
    for (std::size_t i = 0; i < s.q.size(); ++i) {
        const double rebuilt = s.q[i] * s.alpha[i] - s.f[i];
        EXPECT_NEAR(rebuilt, a.exponents.tau[i], 4 * std::numeric_limits<double>::epsilon() * (1 + std::fabs(s.q[i] * s.alpha[i])));
    }
}

TEST(Legendre, MonotoneAlphaForConcaveTau) {
    const auto q = mfdfa::default_q_grid();
    const auto s = legendre_points(q, cascade_tau(q, 0.7));
    for (std::size_t i = 1; i < q.size(); ++i) EXPECT_LT(s.alpha[i], s.alpha[i - 1]);
    for (double f : s.f) EXPECT_LE(f, 1.0 + kFTolerance);
}

TEST(Legendre, NonConcaveTauWarnsWithOffendingQ) {
    const std::vector<double> q{-2, -1, 0, 1, 2, 3};
    const std::vector<double> tau{-3.0, -2.0, -1.0, 0.0, 1.5, 2.5};  // slope jumps up at q = 1..2
    const auto s = legendre_points(q, tau);
    ASSERT_FALSE(s.nonconcave_q.empty());
    EXPECT_NE(std::find(s.nonconcave_q.begin(), s.nonconcave_q.end(), 1.0), s.nonconcave_q.end());
    bool warned = false;
    for (const auto& w : s.warnings) warned |= w.find("not concave") != std::string::npos;
    EXPECT_TRUE(warned);
}

TEST(Legendre, SkipsNonFiniteTauAndNeedsFivePoints) {
    std::vector<double> q{-2, -1, 0, 1, 2, 3};
    std::vector<double> tau{-2, -1.5, -1, -0.5, std::nan(""), 0.5};
    const auto s = legendre_points(q, tau);
    EXPECT_EQ(s.q.size(), 5u);
    EXPECT_FALSE(s.warnings.empty());
    tau[0] = std::nan("");
    EXPECT_THROW(legendre_points(q, tau), InputError);
}

TEST(Summary, WidthArithmetic) {
    SingularitySpectrum s;
    s.alpha = {0.717, 0.545, 0.300};
    s.f = {0.2, 1.0, 0.3};
    const auto sum = spectrum_summary(s);
    EXPECT_NEAR(sum.width, 0.417, 1e-12);
    EXPECT_DOUBLE_EQ(sum.alpha_min, 0.300);
    EXPECT_DOUBLE_EQ(sum.alpha_max, 0.717);
}

TEST(Summary, FewerThanThreePointsFlagged) {
    SingularitySpectrum s;
    s.alpha = {0.4, 0.6};
    s.f = {0.9, 1.0};
    std::vector<std::string> flags;
    const auto sum = spectrum_summary(s, &flags);
    EXPECT_FALSE(sum.refined);
    EXPECT_DOUBLE_EQ(sum.alpha0, 0.6);
    EXPECT_FALSE(flags.empty());
}

TEST(Summary, ParabolicRefinementFindsVertex) {
    SingularitySpectrum s;
    for (double a = 0.3; a <= 0.9001; a += 0.1) {
        s.alpha.push_back(a);
        s.f.push_back(1.0 - 4.0 * (a - 0.62) * (a - 0.62));
    }
    const auto sum = spectrum_summary(s);
    EXPECT_TRUE(sum.refined);
    EXPECT_NEAR(sum.alpha0, 0.62, 1e-12);
    EXPECT_NEAR(sum.asymmetry, (sum.alpha_max - 0.62) - (0.62 - sum.alpha_min), 1e-12);
}

TEST(Envelope, LinearTauPassesThroughHOne) {
    const auto q = mfdfa::default_q_grid();
    std::vector<double> tau;
    for (double v : q) tau.push_back(0.5 * v - 1.0);
    const auto env = envelope(q, tau, std::vector<double>{0.4, 0.5, 0.6});
    EXPECT_NEAR(env[1].y, 1.0, 1e-12);
    EXPECT_LT(env[0].y, env[1].y);  // rising to the left of H
    EXPECT_LT(env[2].y, env[1].y);  // falling to the right
    EXPECT_GT(env[0].argmin_q, 0.0);
    EXPECT_LT(env[2].argmin_q, 0.0);
}

TEST(Envelope, CascadeAtAlphaZeroIsOne) {
    const auto q = mfdfa::default_q_grid();
    const auto tau = cascade_tau(q);
    const auto s = legendre_points(q, tau);
    const auto env = envelope(q, tau, std::vector<double>{s.summary.alpha0});
    EXPECT_NEAR(env[0].y, 1.0, 0.01);
}

TEST(Envelope, AgreesWithLegendrePoints) {
    const auto q = mfdfa::default_q_grid();
    const auto tau = cascade_tau(q);
    const auto s = legendre_points(q, tau);
    const auto env = envelope(q, tau, s.alpha);
    for (std::size_t i = 0; i < s.q.size(); ++i) EXPECT_NEAR(env[i].y, s.f[i], 0.01) << "q=" << s.q[i];
}

TEST(Envelope, TailsBelowInteriorValues) {
    const auto q = mfdfa::default_q_grid();
    const auto tau = cascade_tau(q);
    const auto s = legendre_points(q, tau);
    const auto samples = envelope_alpha_samples(s, 101);
    EXPECT_NEAR(samples.front(), s.summary.alpha_min - 0.05, 1e-12);
    EXPECT_NEAR(samples.back(), s.summary.alpha_max + 0.05, 1e-12);
    const auto env = envelope(q, tau, std::vector<double>{s.summary.alpha_min - 0.05, s.summary.alpha_max + 0.05});
    const auto lo = std::min_element(s.alpha.begin(), s.alpha.end()) - s.alpha.begin();
    const auto hi = std::max_element(s.alpha.begin(), s.alpha.end()) - s.alpha.begin();
    EXPECT_LT(env[0].y, s.f[static_cast<std::size_t>(lo)]);
    EXPECT_LT(env[1].y, s.f[static_cast<std::size_t>(hi)]);
    // Direct minimisation over the grid.
    double direct = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q.size(); ++i) direct = std::min(direct, q[i] * (s.summary.alpha_min - 0.05) - tau[i]);
    EXPECT_EQ(env[0].y, direct);
}
