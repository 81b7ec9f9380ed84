#include "mftk/correl.h"

#include "fft.h"
#include "mftk/error.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace mftk::correl {

namespace {

double apply(Transform t, double x) {
    switch (t) {
        case Transform::Raw: return x;
        case Transform::Absolute: return std::abs(x);
        case Transform::Squared: return x * x;
    }
    return x;
}

// sum_t c_t c_{t+k} for k = 0..max_lag (zero beyond the block end)
std::vector<double> lagged_products(std::span<const double> centered, std::size_t max_lag) {
    const std::size_t n = centered.size();
    const std::size_t size = detail::next_pow2(n + max_lag + 1);
    std::vector<std::complex<double>> buf(size);
    for (std::size_t i = 0; i < n; ++i) buf[i] = centered[i];
    buf = detail::dft(std::move(buf), false);
    for (auto& v : buf) v = std::norm(v);
    buf = detail::dft(std::move(buf), true);
    std::vector<double> out(max_lag + 1, 0.0);
    const std::size_t top = std::min(max_lag, n == 0 ? 0 : n - 1);
    for (std::size_t k = 0; k <= top; ++k) out[k] = buf[k].real() / static_cast<double>(size);
    return out;
}

Correlogram finish(std::vector<double> numer, double denom, std::size_t n, Transform t) {
    Correlogram c;
    c.n = n;
    c.transform = t;
    c.band = 1.96 / std::sqrt(static_cast<double>(n));
    c.acf.resize(numer.size());
    for (std::size_t k = 0; k < numer.size(); ++k) c.acf[k] = std::clamp(numer[k] / denom, -1.0, 1.0);
    c.acf[0] = 1.0;
    return c;
}

}  // namespace

std::string to_string(Transform t) {
    switch (t) {
        case Transform::Raw: return "raw";
        case Transform::Absolute: return "abs";
        case Transform::Squared: return "squared";
    }
    return "unknown";
}

Transform parse_transform(std::string_view text) {
    if (text == "raw") return Transform::Raw;
    if (text == "abs" || text == "absolute") return Transform::Absolute;
    if (text == "squared" || text == "sq") return Transform::Squared;
    throw InputError("unknown transform '" + std::string(text) + "' (raw|abs|squared)");
}

Correlogram acf(std::span<const double> series, std::size_t max_lag, Transform transform) {
    const std::size_t n = series.size();
    if (n < 2 || 2 * max_lag >= n)
        throw InputError("acf: max_lag " + std::to_string(max_lag) + " must be below N/2 = " + std::to_string(n / 2));
    std::vector<double> y(n);
    std::transform(series.begin(), series.end(), y.begin(), [&](double x) { return apply(transform, x); });
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double denom = 0.0;
    for (auto& v : y) {
        v -= mean;
        denom += v * v;
    }
    if (!(denom > 0.0)) throw DegenerateInputError("acf: zero-variance series");
    return finish(lagged_products(y, max_lag), denom, n, transform);
}

Correlogram acf(const ReturnSeries& series, std::size_t max_lag, Transform transform, bool exclude_cross_day) {
    if (!exclude_cross_day) return acf(series.flatten(), max_lag, transform);

    const std::size_t n = series.size();
    if (n < 2 || 2 * max_lag >= n)
        throw InputError("acf: max_lag " + std::to_string(max_lag) + " must be below N/2 = " + std::to_string(n / 2));
    double sum = 0.0;
    for (const auto& day : series.days)
        for (double r : day.returns) sum += apply(transform, r);
    const double mean = sum / static_cast<double>(n);

    std::vector<double> numer(max_lag + 1, 0.0);
    double denom = 0.0;
    for (const auto& day : series.days) {
        std::vector<double> y(day.returns.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            y[i] = apply(transform, day.returns[i]) - mean;
            denom += y[i] * y[i];
        }
        const auto block = lagged_products(y, max_lag);
        for (std::size_t k = 0; k <= max_lag; ++k) numer[k] += block[k];
    }
    if (!(denom > 0.0)) throw DegenerateInputError("acf: zero-variance series");
    return finish(std::move(numer), denom, n, transform);
}

double fraction_outside_band(const Correlogram& c, std::size_t lag_lo, std::size_t lag_hi) {
    if (lag_lo > lag_hi || lag_hi > c.max_lag()) throw InputError("fraction_outside_band: lag range out of bounds");
    std::size_t outside = 0;
    for (std::size_t k = lag_lo; k <= lag_hi; ++k)
        if (std::abs(c.acf[k]) > c.band) ++outside;
    return static_cast<double>(outside) / static_cast<double>(lag_hi - lag_lo + 1);
}

std::vector<DailyPeak> daily_pattern(const Correlogram& c, std::size_t day_length, std::size_t search_radius) {
    if (day_length == 0) throw InputError("daily_pattern: day length must be positive");
    if (c.max_lag() < 2 * day_length)
        throw InputError("daily_pattern: max_lag " + std::to_string(c.max_lag()) + " is below two day lengths (" +
                         std::to_string(2 * day_length) + ")");
    if (search_radius == 0) search_radius = std::max<std::size_t>(1, day_length / 20);

    std::vector<DailyPeak> peaks;
    for (std::size_t k = 1; k * day_length <= c.max_lag(); ++k) {
        const std::size_t centre = k * day_length;
        const std::size_t lo = centre > search_radius ? centre - search_radius : 1;
        const std::size_t hi = std::min(c.max_lag(), centre + search_radius);
        DailyPeak p;
        p.multiple = k;
        p.lag = centre;
        p.value = c.acf[centre];
        for (std::size_t lag = lo; lag <= hi; ++lag)
            if (c.acf[lag] > p.value) {
                p.value = c.acf[lag];
                p.lag = lag;
            }

        const std::size_t half = day_length / 2;
        const std::size_t wlo = std::max<std::size_t>(1, centre > half ? centre - half : 1);
        const std::size_t whi = std::min(c.max_lag(), centre + half);
        std::vector<double> window(c.acf.begin() + static_cast<std::ptrdiff_t>(wlo),
                                   c.acf.begin() + static_cast<std::ptrdiff_t>(whi) + 1);
        auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
        std::nth_element(window.begin(), mid, window.end());
        p.baseline = *mid;
        p.prominence = p.value - p.baseline;
        peaks.push_back(p);
    }
    return peaks;
}

double prominence_ratio(const std::vector<DailyPeak>& candidate, const std::vector<DailyPeak>& reference) {
    const std::size_t n = std::min(candidate.size(), reference.size());
    if (n == 0) throw InputError("prominence_ratio: no peaks to compare");
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        a += candidate[i].prominence;
        b += reference[i].prominence;
    }
    if (!(b > 0.0)) throw DegenerateInputError("prominence_ratio: reference has no positive daily peaks");
    return a / b;
}

VolatilityProfile intraday_volatility_profile(const ReturnSeries& series) {
    if (series.days.empty()) throw InputError("volatility profile: no days");
    VolatilityProfile out;
    std::size_t length = series.days.front().returns.size();
    for (const auto& day : series.days) length = std::min(length, day.returns.size());
    if (!series.uniform())
        out.warnings.push_back("ragged days: profile restricted to the common prefix of " + std::to_string(length) +
                               " slots");
    out.mean_abs_return.assign(length, 0.0);
    for (const auto& day : series.days)
        for (std::size_t i = 0; i < length; ++i) out.mean_abs_return[i] += std::abs(day.returns[i]);
    for (auto& v : out.mean_abs_return) v /= static_cast<double>(series.days.size());
    out.days_used = series.days.size();
    return out;
}

}  // namespace mftk::correl
