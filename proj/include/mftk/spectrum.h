#pragma once

#include "mftk/mfdfa.h"

#include <span>
#include <string>
#include <vector>

namespace mftk::spectrum {

// Numerical slack allowed above the theoretical maximum f = 1.
inline constexpr double kFTolerance = 0.05;

struct SpectrumSummary {
    double alpha_min = 0.0;
    double alpha_max = 0.0;
    double alpha0 = 0.0;  // abscissa of max f, parabolically refined when possible
    double width = 0.0;
    double asymmetry = 0.0;  // (alpha_max - alpha0) - (alpha0 - alpha_min)
    double f_max = 0.0;
    bool refined = false;
};

// Points (alpha_q, f(alpha_q)) ordered by q. alpha_min/alpha_max are limited
// by the q range: the true endpoints correspond to q -> +-inf.
struct SingularitySpectrum {
    std::vector<double> q;
    std::vector<double> alpha;
    std::vector<double> f;
    SpectrumSummary summary;
    std::vector<double> nonconcave_q;  // q where alpha increases with q
    std::vector<std::string> warnings;
};

// alpha_q = d tau / d q (second-order central differences on a possibly
// non-uniform grid, one-sided at the ends); f = q alpha - tau. Entries with
// non-finite tau are skipped. Requires at least 5 usable points.
SingularitySpectrum legendre_points(std::span<const double> q, std::span<const double> tau);
SingularitySpectrum legendre_points(const mfdfa::ScalingExponents& exponents);

SpectrumSummary spectrum_summary(const SingularitySpectrum& spectrum, std::vector<std::string>* flags = nullptr);

struct EnvelopePoint {
    double alpha = 0.0;
    double y = 0.0;        // min over q of q alpha - tau(q)
    double argmin_q = 0.0;
};

// Lower envelope of the lines y = q alpha - tau(q) sampled at alpha_samples.
std::vector<EnvelopePoint> envelope(std::span<const double> q, std::span<const double> tau,
                                    std::span<const double> alpha_samples);

// `count` evenly spaced alphas covering [alpha_min - margin, alpha_max + margin].
std::vector<double> envelope_alpha_samples(const SingularitySpectrum& spectrum, std::size_t count,
                                           double margin = 0.05);

}  // namespace mftk::spectrum
