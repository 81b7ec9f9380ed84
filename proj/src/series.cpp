#include "mftk/series.h"

#include "mftk/error.h"

#include <algorithm>
#include <cstdio>

namespace mftk {

std::string format_date(Date date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

Date parse_date(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    if (text.size() != 10 || std::sscanf(text.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3)
        throw InputError("invalid date '" + text + "', expected yyyy-mm-dd");
    const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!date.ok()) throw InputError("invalid calendar date '" + text + "'");
    return date;
}

std::size_t ReturnSeries::size() const {
    std::size_t n = 0;
    for (const auto& day : days) n += day.returns.size();
    return n;
}

std::vector<double> ReturnSeries::flatten() const {
    std::vector<double> out;
    out.reserve(size());
    for (const auto& day : days) out.insert(out.end(), day.returns.begin(), day.returns.end());
    return out;
}

bool ReturnSeries::uniform() const {
    return std::all_of(days.begin(), days.end(),
                       [&](const DayBlock& d) { return d.returns.size() == days.front().returns.size(); });
}

ReturnSeries partition_into_days(const std::vector<double>& values, std::size_t day_length,
                                 int sampling_interval_s) {
    if (day_length == 0) throw InputError("day length must be positive");
    ReturnSeries series;
    series.sampling_interval_s = sampling_interval_s;
    std::chrono::sys_days date = std::chrono::sys_days{std::chrono::year{2000} / 1 / 1};
    for (std::size_t begin = 0; begin < values.size(); begin += day_length) {
        const std::size_t end = std::min(values.size(), begin + day_length);
        series.days.push_back({Date{date}, {values.begin() + static_cast<std::ptrdiff_t>(begin),
                                            values.begin() + static_cast<std::ptrdiff_t>(end)}});
        date += std::chrono::days{1};
    }
    return series;
}

}  // namespace mftk
