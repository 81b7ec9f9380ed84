#pragma once

#include "mftk/series.h"

#include <chrono>
#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace mftk::ingest {

using namespace std::chrono_literals;

// Exchange-local wall-clock time; no timezone conversion is performed.
using Timestamp = std::chrono::local_seconds;
using TimeOfDay = std::chrono::seconds;  // seconds since local midnight

struct Tick {
    Timestamp timestamp;
    double price = 0.0;
};

struct FormatConfig {
    char delimiter = ',';
    std::string timestamp_format = "%Y-%m-%dT%H:%M:%S";  // std::get_time pattern
    std::string timezone = "Europe/Madrid";              // recorded, not applied
    std::size_t timestamp_column = 0;
    std::size_t price_column = 1;
    bool has_header = false;
    // Malformed records abort when strict, otherwise they are skipped with a warning.
    bool strict = true;
    // Out-of-order ticks up to this far behind the latest seen are re-sorted;
    // anything older is an error.
    std::chrono::seconds reorder_tolerance{0};
};

struct SessionConfig {
    TimeOfDay open = 9h;
    TimeOfDay close = 17h + 30min;
    // Ticks later than close - closing_cutoff are discarded.
    std::chrono::seconds closing_cutoff = 30s;
};

struct TickSeries {
    std::vector<Tick> ticks;  // sorted, all inside the session window
    TimeOfDay session_open{};
    TimeOfDay session_close{};
    std::chrono::seconds closing_cutoff{};
    // Every date seen in the input, including ones whose ticks were all filtered.
    std::vector<Date> dates_seen;
    std::size_t dropped_outside_session = 0;
    std::vector<std::string> warnings;
};

TimeOfDay time_of_day(Timestamp t);
Date date_of(Timestamp t);
// "HH:MM[:SS]" -> seconds since midnight
TimeOfDay parse_time_of_day(std::string_view text);
std::string format_time_of_day(TimeOfDay t);

TickSeries parse_ticks(std::istream& in, const FormatConfig& format, const SessionConfig& session);
TickSeries parse_ticks(std::string_view text, const FormatConfig& format, const SessionConfig& session);

struct DayPrices {
    Date date;
    TimeOfDay first_slot{};      // time of the first grid point kept
    std::vector<double> prices;  // one per grid point, carried forward
};

struct PriceGrid {
    std::vector<DayPrices> days;
    std::chrono::seconds interval{};
    std::size_t full_day_points = 0;  // grid points in an untruncated session
    std::vector<std::string> warnings;
};

// Last-observation-carried-forward sampling on a grid anchored at session
// open and ending at the last grid point <= close - closing_cutoff. Grid
// points before a day's first tick are dropped. Days without ticks are
// omitted with a warning, as are truncated sessions flagged.
PriceGrid resample(const TickSeries& ticks, std::chrono::seconds interval);

// Per-day r_k = ln p_{k+1} - ln p_k. Days with fewer than two prices are
// omitted; a warning is appended to *warnings when given.
ReturnSeries log_returns(const PriceGrid& grid, std::vector<std::string>* warnings = nullptr);

}  // namespace mftk::ingest
