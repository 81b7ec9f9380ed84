#include "mftk/returns_io.h"

#include "mftk/error.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mftk::io {

namespace {

constexpr const char* kTextMagic = "# mftk-returns v1";
constexpr const char* kCsvHeader = "day_index,date,log_return";
constexpr const char* kIntervalKey = "sampling_interval_s: ";

double parse_value(const std::string& text, std::size_t line_no) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value))
        throw ParseError(line_no, "invalid return value '" + text + "'");
    return value;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

void read_comment(const std::string& line, ReturnSeries& series, std::size_t line_no) {
    const auto pos = line.find(kIntervalKey);
    if (pos == std::string::npos) return;
    try {
        series.sampling_interval_s = std::stoi(line.substr(pos + std::char_traits<char>::length(kIntervalKey)));
    } catch (const std::exception&) {
        throw ParseError(line_no, "invalid sampling interval");
    }
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

ReturnsFormat format_for_path(const std::filesystem::path& path) {
    return path.extension() == ".csv" ? ReturnsFormat::Csv : ReturnsFormat::Text;
}

void write_returns(std::ostream& out, const ReturnSeries& series, ReturnsFormat format,
                   const std::vector<std::string>& comments) {
    if (format == ReturnsFormat::Text) out << kTextMagic << '\n';
    out << "# " << kIntervalKey << series.sampling_interval_s << '\n';
    for (const auto& c : comments) out << "# " << c << '\n';

    if (format == ReturnsFormat::Text) {
        for (const auto& day : series.days) {
            out << "# DATE " << format_date(day.date) << '\n';
            for (double r : day.returns) out << format_double(r) << '\n';
        }
        return;
    }
    out << kCsvHeader << '\n';
    for (std::size_t d = 0; d < series.days.size(); ++d) {
        const auto date = format_date(series.days[d].date);
        for (double r : series.days[d].returns) out << d << ',' << date << ',' << format_double(r) << '\n';
    }
}

void write_returns_file(const std::filesystem::path& path, const ReturnSeries& series,
                        const std::vector<std::string>& comments) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    write_returns(out, series, format_for_path(path), comments);
    if (!out) throw InputError("failed writing '" + path.string() + "'");
}

ReturnSeries read_returns(std::istream& in) {
    ReturnSeries series;
    std::string line;
    std::size_t line_no = 0;
    enum class Mode { Unknown, Text, Csv } mode = Mode::Unknown;

    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(std::move(line));
        if (line.empty()) continue;

        if (line.rfind("# DATE ", 0) == 0) {
            if (mode == Mode::Csv) throw ParseError(line_no, "DATE header inside CSV returns file");
            mode = Mode::Text;
            series.days.push_back({parse_date(line.substr(7)), {}});
            continue;
        }
        if (line.front() == '#') {
            read_comment(line, series, line_no);
            continue;
        }
        if (mode == Mode::Unknown && line == kCsvHeader) {
            mode = Mode::Csv;
            continue;
        }

        if (mode == Mode::Text) {
            series.days.back().returns.push_back(parse_value(line, line_no));
        } else if (mode == Mode::Csv) {
            std::istringstream fields(line);
            std::string index, date, value;
            if (!std::getline(fields, index, ',') || !std::getline(fields, date, ',') ||
                !std::getline(fields, value))
                throw ParseError(line_no, "expected day_index,date,log_return");
            std::size_t day_index = 0;
            try {
                day_index = std::stoul(index);
            } catch (const std::exception&) {
                throw ParseError(line_no, "invalid day index '" + index + "'");
            }
            if (day_index == series.days.size()) {
                series.days.push_back({parse_date(date), {}});
            } else if (day_index + 1 != series.days.size()) {
                throw ParseError(line_no, "day indices must be contiguous and non-decreasing");
            } else if (format_date(series.days.back().date) != date) {
                throw ParseError(line_no, "date changes within day index " + index);
            }
            series.days.back().returns.push_back(parse_value(value, line_no));
        } else {
            throw ParseError(line_no, "value before any '# DATE' header or CSV header");
        }
    }
    return series;
}

ReturnSeries read_returns_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open returns file '" + path.string() + "'");
    return read_returns(in);
}

}  // namespace mftk::io
