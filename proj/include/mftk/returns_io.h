#pragma once

#include "mftk/series.h"

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace mftk::io {

// Two interchangeable layouts for a ReturnSeries:
//
// Text:   "# mftk-returns v1", optional "# key: value" comment lines, then one
//         "# DATE yyyy-mm-dd" line per day followed by its returns, one per line.
// Csv:    '#' comment lines, a "day_index,date,log_return" header, one row per return.
//
// Values are written in shortest round-trip form, so read(write(x)) == x bit for bit.
enum class ReturnsFormat { Text, Csv };

ReturnsFormat format_for_path(const std::filesystem::path& path);

void write_returns(std::ostream& out, const ReturnSeries& series, ReturnsFormat format,
                   const std::vector<std::string>& comments = {});
void write_returns_file(const std::filesystem::path& path, const ReturnSeries& series,
                        const std::vector<std::string>& comments = {});

// Detects the layout from the content. Throws ParseError with line numbers.
ReturnSeries read_returns(std::istream& in);
ReturnSeries read_returns_file(const std::filesystem::path& path);

// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace mftk::io
