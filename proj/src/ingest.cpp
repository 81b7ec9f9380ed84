#include "mftk/ingest.h"

#include "mftk/error.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace mftk::ingest {

namespace {

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(delimiter, start);
        fields.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool parse_timestamp(std::string_view field, const std::string& pattern, Timestamp& out) {
    std::tm tm{};
    std::istringstream in{std::string(field)};
    in >> std::get_time(&tm, pattern.c_str());
    if (in.fail()) return false;
    in >> std::ws;
    if (!in.eof()) return false;
    const Date date{std::chrono::year{tm.tm_year + 1900}, std::chrono::month{static_cast<unsigned>(tm.tm_mon + 1)},
                    std::chrono::day{static_cast<unsigned>(tm.tm_mday)}};
    if (!date.ok() || tm.tm_hour > 23 || tm.tm_min > 59 || tm.tm_sec > 60) return false;
    out = std::chrono::local_days{date} + std::chrono::hours{tm.tm_hour} + std::chrono::minutes{tm.tm_min} +
          std::chrono::seconds{tm.tm_sec};
    return true;
}

bool parse_price(std::string_view field, double& out) {
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

}  // namespace

TimeOfDay time_of_day(Timestamp t) {
    return t - std::chrono::floor<std::chrono::days>(t);
}

Date date_of(Timestamp t) {
    return Date{std::chrono::floor<std::chrono::days>(t)};
}

TimeOfDay parse_time_of_day(std::string_view text) {
    unsigned h = 0, m = 0, s = 0;
    const std::string str(trim(text));
    char tail = 0;
    const int n = std::sscanf(str.c_str(), "%2u:%2u:%2u%c", &h, &m, &s, &tail);
    if ((n != 2 && n != 3) || h > 24 || m > 59 || s > 59)
        throw InputError("invalid time of day '" + str + "', expected HH:MM[:SS]");
    return std::chrono::hours{h} + std::chrono::minutes{m} + std::chrono::seconds{s};
}

std::string format_time_of_day(TimeOfDay t) {
    const auto total = t.count();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld", static_cast<long long>(total / 3600),
                  static_cast<long long>(total / 60 % 60), static_cast<long long>(total % 60));
    return buf;
}

TickSeries parse_ticks(std::istream& in, const FormatConfig& format, const SessionConfig& session) {
    if (session.close <= session.open) throw InputError("session close must be after session open");
    if (session.closing_cutoff.count() < 0) throw InputError("closing cutoff must be non-negative");

    TickSeries out;
    out.session_open = session.open;
    out.session_close = session.close;
    out.closing_cutoff = session.closing_cutoff;
    const TimeOfDay last_accepted = session.close - session.closing_cutoff;

    std::set<Date> dates;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = format.has_header;
    bool any = false;
    Timestamp latest{};
    bool need_sort = false;

    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }

        const auto fields = split(text, format.delimiter);
        Timestamp ts;
        double price = 0.0;
        const char* problem = nullptr;
        if (fields.size() <= std::max(format.timestamp_column, format.price_column))
            problem = "expected timestamp and price fields";
        else if (!parse_timestamp(trim(fields[format.timestamp_column]), format.timestamp_format, ts))
            problem = "unparseable timestamp";
        else if (!parse_price(trim(fields[format.price_column]), price))
            problem = "unparseable price";
        if (problem) {
            if (format.strict) throw ParseError(line_no, std::string("malformed record: ") + problem);
            out.warnings.push_back("line " + std::to_string(line_no) + ": skipped malformed record (" + problem + ")");
            continue;
        }
        if (!(price > 0.0)) throw ParseError(line_no, "non-positive price");

        if (any && ts < latest) {
            if (latest - ts > format.reorder_tolerance)
                throw ParseError(line_no, "timestamp decreases by more than the reorder tolerance");
            need_sort = true;
        }
        latest = any ? std::max(latest, ts) : ts;
        any = true;

        dates.insert(date_of(ts));
        const auto tod = time_of_day(ts);
        if (tod < session.open || tod > last_accepted) {
            ++out.dropped_outside_session;
            continue;
        }
        out.ticks.push_back({ts, price});
    }

    if (need_sort)
        std::stable_sort(out.ticks.begin(), out.ticks.end(),
                         [](const Tick& a, const Tick& b) { return a.timestamp < b.timestamp; });
    out.dates_seen.assign(dates.begin(), dates.end());
    return out;
}

TickSeries parse_ticks(std::string_view text, const FormatConfig& format, const SessionConfig& session) {
    std::istringstream in{std::string(text)};
    return parse_ticks(in, format, session);
}

PriceGrid resample(const TickSeries& series, std::chrono::seconds interval) {
    if (interval.count() <= 0) throw InputError("resample: interval must be positive");
    const auto length = series.session_close - series.session_open;
    if (length.count() <= 0) throw InputError("resample: empty session");
    if (length % interval != std::chrono::seconds{0})
        throw InputError("resample: interval " + std::to_string(interval.count()) +
                         " s does not divide the session length");

    const TimeOfDay grid_end = series.session_close - series.closing_cutoff;
    if (grid_end < series.session_open) throw InputError("resample: cutoff exceeds the session length");
    const auto slots = static_cast<std::size_t>((grid_end - series.session_open) / interval) + 1;

    PriceGrid grid;
    grid.interval = interval;
    grid.full_day_points = slots;

    std::map<Date, std::vector<const Tick*>> by_day;
    for (const auto& tick : series.ticks) by_day[date_of(tick.timestamp)].push_back(&tick);

    for (const auto& date : series.dates_seen)
        if (!by_day.count(date))
            grid.warnings.push_back(format_date(date) + ": no ticks inside the session, day omitted");

    for (const auto& [date, ticks] : by_day) {
        DayPrices day;
        day.date = date;
        std::size_t next = 0;
        double last_price = 0.0;
        bool have_price = false;
        for (std::size_t k = 0; k < slots; ++k) {
            const TimeOfDay slot = series.session_open + interval * static_cast<long long>(k);
            while (next < ticks.size() && time_of_day(ticks[next]->timestamp) <= slot) {
                last_price = ticks[next]->price;
                have_price = true;
                ++next;
            }
            if (!have_price) continue;
            if (day.prices.empty()) day.first_slot = slot;
            day.prices.push_back(last_price);
        }
        if (day.prices.empty()) {
            grid.warnings.push_back(format_date(date) + ": no ticks on the grid, day omitted");
            continue;
        }
        if (day.prices.size() < slots)
            grid.warnings.push_back(format_date(date) + ": short session, " + std::to_string(day.prices.size()) +
                                    " of " + std::to_string(slots) + " grid points");
        grid.days.push_back(std::move(day));
    }
    return grid;
}

ReturnSeries log_returns(const PriceGrid& grid, std::vector<std::string>* warnings) {
    ReturnSeries out;
    out.sampling_interval_s = static_cast<int>(grid.interval.count());
    for (const auto& day : grid.days) {
        if (day.prices.size() < 2) {
            if (warnings) warnings->push_back(format_date(day.date) + ": fewer than two prices, day omitted");
            continue;
        }
        DayBlock block;
        block.date = day.date;
        block.returns.resize(day.prices.size() - 1);
        for (std::size_t k = 0; k + 1 < day.prices.size(); ++k) {
            const double p0 = day.prices[k];
            const double p1 = day.prices[k + 1];
            if (!(p0 > 0.0) || !(p1 > 0.0))
                throw InputError(format_date(day.date) + ": non-positive price in grid");
            block.returns[k] = std::log(p1) - std::log(p0);
        }
        out.days.push_back(std::move(block));
    }
    return out;
}

}  // namespace mftk::ingest
