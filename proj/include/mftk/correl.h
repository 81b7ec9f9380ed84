#pragma once

#include "mftk/series.h"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mftk::correl {

enum class Transform { Raw, Absolute, Squared };

std::string to_string(Transform t);
Transform parse_transform(std::string_view text);

struct Correlogram {
    std::vector<double> acf;  // lags 0 .. max_lag
    std::size_t n = 0;
    double band = 0.0;  // 1.96 / sqrt(n), white-noise 95% interval
    Transform transform = Transform::Raw;

    std::size_t max_lag() const { return acf.empty() ? 0 : acf.size() - 1; }
};

// Biased sample ACF sum_t (y_t - m)(y_{t+k} - m) / sum_t (y_t - m)^2 of the
// transformed series, via zero-padded FFT. Requires max_lag < n / 2.
Correlogram acf(std::span<const double> series, std::size_t max_lag, Transform transform);

// Same on the day-abutted series. With exclude_cross_day, lagged products
// whose two ends fall in different days are left out of the numerator.
Correlogram acf(const ReturnSeries& series, std::size_t max_lag, Transform transform, bool exclude_cross_day = false);

// Share of lags in [lag_lo, lag_hi] with |acf| > band.
double fraction_outside_band(const Correlogram& c, std::size_t lag_lo, std::size_t lag_hi);

struct DailyPeak {
    std::size_t multiple = 0;  // k in k * day_length
    std::size_t lag = 0;       // lag of the local maximum near k * day_length
    double value = 0.0;
    double baseline = 0.0;     // median ACF over the surrounding day-wide window
    double prominence = 0.0;   // value - baseline
};

// Local maxima of the ACF at each multiple of day_length, searched within
// +-search_radius lags (0 -> max(1, day_length / 20)). Requires
// max_lag >= 2 * day_length.
std::vector<DailyPeak> daily_pattern(const Correlogram& c, std::size_t day_length, std::size_t search_radius = 0);

// Mean peak prominence of `candidate` relative to `reference`; < 1 means the
// periodic component was attenuated.
double prominence_ratio(const std::vector<DailyPeak>& candidate, const std::vector<DailyPeak>& reference);

struct VolatilityProfile {
    std::vector<double> mean_abs_return;  // per intraday slot
    std::size_t days_used = 0;
    std::vector<std::string> warnings;
};

// Average |r| across days at each intraday slot. Ragged days are cut to the
// shortest common length with a warning.
VolatilityProfile intraday_volatility_profile(const ReturnSeries& series);

}  // namespace mftk::correl
