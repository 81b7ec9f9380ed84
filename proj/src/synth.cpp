#include "mftk/synth.h"

#include "fft.h"
#include "mftk/error.h"
#include "mftk/rng.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace mftk::synth {

namespace {

void validate(const FgnSpec& spec) {
    if (!(spec.hurst > 0.0 && spec.hurst < 1.0))
        throw InputError("fgn: Hurst exponent must lie in (0, 1), got " + std::to_string(spec.hurst));
    if (spec.length < 2) throw InputError("fgn: length must be >= 2");
    if (!(spec.sigma > 0.0)) throw InputError("fgn: sigma must be positive");
}

}  // namespace

std::vector<double> generate_gaussian_iid(std::size_t n, double sigma, std::uint64_t seed) {
    if (n == 0) throw InputError("iid: length must be >= 1");
    if (!(sigma > 0.0)) throw InputError("iid: sigma must be positive");
    auto rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, sigma);
    std::vector<double> out(n);
    for (auto& x : out) x = normal(rng);
    return out;
}

double fgn_autocovariance(double hurst, double sigma, std::size_t lag) {
    const double k = static_cast<double>(lag);
    const double two_h = 2.0 * hurst;
    const double lower = lag == 0 ? 1.0 : std::pow(k - 1.0, two_h);
    return 0.5 * sigma * sigma * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) + lower);
}

std::vector<double> fgn_circulant_eigenvalues(double hurst, double sigma, std::size_t n) {
    const std::size_t m = 2 * n;
    std::vector<std::complex<double>> row(m);
    for (std::size_t j = 0; j <= n; ++j) row[j] = fgn_autocovariance(hurst, sigma, j);
    for (std::size_t j = n + 1; j < m; ++j) row[j] = row[m - j];
    const auto spectrum = detail::dft(std::move(row), false);
    std::vector<double> eig(m);
    for (std::size_t k = 0; k < m; ++k) eig[k] = spectrum[k].real();
    return eig;
}

std::vector<double> generate_fgn_recursive(const FgnSpec& spec) {
    validate(spec);
    const std::size_t n = spec.length;
    std::vector<double> gamma(n);
    for (std::size_t k = 0; k < n; ++k) gamma[k] = fgn_autocovariance(spec.hurst, spec.sigma, k);

    auto rng = make_rng(spec.seed);
    std::normal_distribution<double> normal;

    std::vector<double> x(n);
    std::vector<double> phi(n, 0.0), prev(n, 0.0);
    double v = gamma[0];
    x[0] = std::sqrt(v) * normal(rng);
    for (std::size_t t = 1; t < n; ++t) {
        double acc = gamma[t];
        for (std::size_t j = 1; j < t; ++j) acc -= prev[j] * gamma[t - j];
        const double reflection = acc / v;
        phi[t] = reflection;
        for (std::size_t j = 1; j < t; ++j) phi[j] = prev[j] - reflection * prev[t - j];
        v *= 1.0 - reflection * reflection;
        double mean = 0.0;
        for (std::size_t j = 1; j <= t; ++j) mean += phi[j] * x[t - j];
        x[t] = mean + std::sqrt(v) * normal(rng);
        std::copy(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(t) + 1, prev.begin());
    }
    return x;
}

std::vector<double> generate_fgn(const FgnSpec& spec) {
    validate(spec);
    const std::size_t n = spec.length;
    const std::size_t m = 2 * n;
    auto eig = fgn_circulant_eigenvalues(spec.hurst, spec.sigma, n);

    // Round-off can leave exact zeros slightly negative; anything beyond that
    // means the embedding is not PSD and we must not approximate.
    const double scale = *std::max_element(eig.begin(), eig.end());
    for (auto& e : eig) {
        if (e < 0.0) {
            if (e < -1e-12 * scale) return generate_fgn_recursive(spec);
            e = 0.0;
        }
    }

    auto rng = make_rng(spec.seed);
    std::normal_distribution<double> normal;
    std::vector<std::complex<double>> w(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double re = normal(rng);
        const double im = normal(rng);
        w[k] = std::sqrt(eig[k] / static_cast<double>(m)) * std::complex<double>(re, im);
    }
    const auto y = detail::dft(std::move(w), false);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = y[j].real();
    return out;
}

std::vector<double> cumulative_sum(const std::vector<double>& increments) {
    std::vector<double> out(increments.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < increments.size(); ++i) out[i] = acc += increments[i];
    return out;
}

std::vector<double> generate_binomial_cascade(const CascadeSpec& spec) {
    if (!(spec.multiplier > 0.0 && spec.multiplier < 1.0))
        throw InputError("cascade: multiplier must lie in (0, 1)");
    if (spec.levels < 1) throw InputError("cascade: levels must be >= 1");
    if (spec.levels > kMaxCascadeLevels)
        throw InputError("cascade: 2^" + std::to_string(spec.levels) +
                         " cells exceed the memory budget (max levels " +
                         std::to_string(kMaxCascadeLevels) + ")");

    const double a = spec.multiplier;
    const double b = 1.0 - a;
    auto rng = make_rng(spec.seed);

    std::vector<double> mass{1.0};
    for (unsigned level = 0; level < spec.levels; ++level) {
        std::vector<double> next(mass.size() * 2);
        for (std::size_t i = 0; i < mass.size(); ++i) {
            const bool swap = spec.randomize_placement && (rng() >> 63) != 0;
            next[2 * i] = mass[i] * (swap ? b : a);
            next[2 * i + 1] = mass[i] * (swap ? a : b);
        }
        mass = std::move(next);
    }
    return mass;
}

double analytic_tau_cascade(double a, double q) {
    return -std::log2(std::pow(a, q) + std::pow(1.0 - a, q));
}

double analytic_alpha_cascade(double a, double q) {
    const double b = 1.0 - a;
    // weight of the `a` branch, written to stay finite for large |q|
    const double wa = 1.0 / (1.0 + std::pow(b / a, q));
    return -(wa * std::log(a) + (1.0 - wa) * std::log(b)) / std::log(2.0);
}

}  // namespace mftk::synth
