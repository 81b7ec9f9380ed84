#include "mftk/spectrum.h"

#include "mftk/error.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mftk::spectrum {

SingularitySpectrum legendre_points(std::span<const double> q_in, std::span<const double> tau_in) {
    if (q_in.size() != tau_in.size()) throw InputError("legendre: q and tau sizes differ");

    SingularitySpectrum out;
    std::vector<double> tau;
    for (std::size_t i = 0; i < q_in.size(); ++i) {
        if (!std::isfinite(tau_in[i])) {
            std::ostringstream msg;
            msg << "tau(" << q_in[i] << ") is not finite, point skipped";
            out.warnings.push_back(msg.str());
            continue;
        }
        out.q.push_back(q_in[i]);
        tau.push_back(tau_in[i]);
    }
    const std::size_t n = out.q.size();
    if (n < 5) throw InputError("legendre: need tau on at least 5 q points, have " + std::to_string(n));
    for (std::size_t i = 1; i < n; ++i)
        if (!(out.q[i] > out.q[i - 1])) throw InputError("legendre: q must be strictly increasing");

    const auto& q = out.q;
    out.alpha.resize(n);
    out.f.resize(n);
    out.alpha[0] = (tau[1] - tau[0]) / (q[1] - q[0]);
    out.alpha[n - 1] = (tau[n - 1] - tau[n - 2]) / (q[n - 1] - q[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h1 = q[i] - q[i - 1];
        const double h2 = q[i + 1] - q[i];
        out.alpha[i] = -h2 / (h1 * (h1 + h2)) * tau[i - 1] + (h2 - h1) / (h1 * h2) * tau[i] +
                       h1 / (h2 * (h1 + h2)) * tau[i + 1];
    }
    for (std::size_t i = 0; i < n; ++i) out.f[i] = q[i] * out.alpha[i] - tau[i];

    // Rounding in a linear tau can wiggle alpha by a few ulps.
    constexpr double kMonotoneSlack = 1e-9;
    for (std::size_t i = 1; i < n; ++i)
        if (out.alpha[i] > out.alpha[i - 1] + kMonotoneSlack) out.nonconcave_q.push_back(q[i]);
    if (!out.nonconcave_q.empty()) {
        std::ostringstream msg;
        msg << "tau is not concave: alpha increases at q =";
        for (double v : out.nonconcave_q) msg << ' ' << v;
        out.warnings.push_back(msg.str());
    }
    const double f_peak = *std::max_element(out.f.begin(), out.f.end());
    if (f_peak > 1.0 + kFTolerance) {
        std::ostringstream msg;
        msg << "max f = " << f_peak << " exceeds 1 + " << kFTolerance;
        out.warnings.push_back(msg.str());
    }

    out.summary = spectrum_summary(out, &out.warnings);
    return out;
}

SingularitySpectrum legendre_points(const mfdfa::ScalingExponents& exponents) {
    return legendre_points(exponents.q, exponents.tau);
}

SpectrumSummary spectrum_summary(const SingularitySpectrum& spectrum, std::vector<std::string>* flags) {
    const auto& alpha = spectrum.alpha;
    const auto& f = spectrum.f;
    if (alpha.empty()) throw InputError("spectrum summary: empty spectrum");

    SpectrumSummary s;
    s.alpha_min = *std::min_element(alpha.begin(), alpha.end());
    s.alpha_max = *std::max_element(alpha.begin(), alpha.end());
    s.width = s.alpha_max - s.alpha_min;
    const auto peak = static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
    s.f_max = f[peak];
    s.alpha0 = alpha[peak];

    if (alpha.size() < 3) {
        if (flags) flags->push_back("spectrum has fewer than 3 points, alpha0 not refined");
    } else if (peak > 0 && peak + 1 < alpha.size()) {
        // vertex of the parabola through the peak and its two neighbours
        const double x0 = alpha[peak - 1], x1 = alpha[peak], x2 = alpha[peak + 1];
        const double y0 = f[peak - 1], y1 = f[peak], y2 = f[peak + 1];
        const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
        const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1));
        const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2));
        if (denom != 0.0 && a / denom < 0.0) {
            const double vertex = -b / (2.0 * a);
            if (vertex >= std::min({x0, x1, x2}) && vertex <= std::max({x0, x1, x2})) {
                s.alpha0 = vertex;
                s.refined = true;
            }
        }
        if (!s.refined && flags) flags->push_back("alpha0 parabolic refinement not applicable, raw argmax used");
    } else if (flags) {
        flags->push_back("max f at the end of the q grid, alpha0 not refined");
    }
    s.asymmetry = (s.alpha_max - s.alpha0) - (s.alpha0 - s.alpha_min);
    return s;
}

std::vector<EnvelopePoint> envelope(std::span<const double> q, std::span<const double> tau,
                                    std::span<const double> alpha_samples) {
    if (q.size() != tau.size() || q.empty()) throw InputError("envelope: q and tau must be non-empty and equal length");
    std::vector<EnvelopePoint> out;
    out.reserve(alpha_samples.size());
    for (double a : alpha_samples) {
        EnvelopePoint p{a, std::numeric_limits<double>::infinity(), 0.0};
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (!std::isfinite(tau[i])) continue;
            const double y = q[i] * a - tau[i];
            if (y < p.y) {
                p.y = y;
                p.argmin_q = q[i];
            }
        }
        out.push_back(p);
    }
    return out;
}

std::vector<double> envelope_alpha_samples(const SingularitySpectrum& spectrum, std::size_t count, double margin) {
    if (count < 2) throw InputError("envelope: need at least 2 samples");
    const double lo = spectrum.summary.alpha_min - margin;
    const double hi = spectrum.summary.alpha_max + margin;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return out;
}

}  // namespace mftk::spectrum
