#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

namespace mftk {

using Date = std::chrono::year_month_day;

// "yyyy-mm-dd"
std::string format_date(Date date);
// Throws InputError on anything that is not a valid yyyy-mm-dd date.
Date parse_date(const std::string& text);

// One market day of intraday log-returns. Returns never span two days.
struct DayBlock {
    Date date;
    std::vector<double> returns;
};

struct ReturnSeries {
    std::vector<DayBlock> days;
    int sampling_interval_s = 0;  // 0 when unknown / synthetic

    std::size_t size() const;
    // Day blocks abutted in date order.
    std::vector<double> flatten() const;
    // True when every day has the same number of returns.
    bool uniform() const;
};

// Split a flat series into consecutive synthetic days of `day_length`
// returns, dated from 2000-01-01 onwards. A shorter trailing block is kept.
ReturnSeries partition_into_days(const std::vector<double>& values, std::size_t day_length,
                                 int sampling_interval_s = 0);

}  // namespace mftk
