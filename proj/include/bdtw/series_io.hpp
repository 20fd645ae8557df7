#ifndef BDTW_SERIES_IO_HPP
#define BDTW_SERIES_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bdtw/series.hpp"

namespace bdtw {

// Text formats, one series per line; a trailing newline and a CR before each
// newline are accepted.
//
//   bits:  ASCII '0'/'1' only, e.g. "0011101"
//   rle:   space-separated "<count>*<symbol>" tokens, e.g. "2*0 3*1 1*0 1*1";
//          count in [1, 2^63-1], adjacent tokens must alternate symbols.
//
// Parse failures throw ParseError naming `source`, line and column.

std::vector<BinarySeries> parse_bits(std::string_view text, const std::string& source = "<input>");
std::vector<RleSeries> parse_rle(std::string_view text, const std::string& source = "<input>");

std::string format_bits(const BinarySeries& x);
std::string format_rle(const RleSeries& x);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace bdtw

#endif  // BDTW_SERIES_IO_HPP
