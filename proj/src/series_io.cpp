#include "bdtw/series_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "bdtw/error.hpp"

namespace bdtw {

namespace {

// Calls fn(line, line_number) for each line; CR before LF is dropped and a
// final newline does not start an extra line.
template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t line_no = 1;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        fn(line, line_no++);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
}

}  // namespace

std::vector<BinarySeries> parse_bits(std::string_view text, const std::string& source) {
    std::vector<BinarySeries> out;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        if (line.empty()) throw ParseError(source, line_no, 1, "empty series");
        std::vector<Symbol> bits(line.size());
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (c != '0' && c != '1') {
                throw ParseError(source, line_no, i + 1, "expected '0' or '1'");
            }
            bits[i] = static_cast<Symbol>(c - '0');
        }
        out.emplace_back(std::move(bits));
    });
    return out;
}

std::vector<RleSeries> parse_rle(std::string_view text, const std::string& source) {
    std::vector<RleSeries> out;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        if (line.empty()) throw ParseError(source, line_no, 1, "empty series");
        std::vector<Run> runs;
        std::size_t pos = 0;
        while (true) {
            const std::size_t token_start = pos;
            Length count = 0;
            const char* first = line.data() + pos;
            const char* last = line.data() + line.size();
            if (first == last || *first < '0' || *first > '9') {
                throw ParseError(source, line_no, pos + 1, "expected run count");
            }
            const auto [ptr, ec] = std::from_chars(first, last, count);
            if (ec == std::errc::result_out_of_range) {
                throw ParseError(source, line_no, token_start + 1, "run count exceeds 2^63-1");
            }
            if (count < 1) throw ParseError(source, line_no, token_start + 1, "run count must be >= 1");
            pos = static_cast<std::size_t>(ptr - line.data());
            if (pos >= line.size() || line[pos] != '*') throw ParseError(source, line_no, pos + 1, "expected '*'");
            ++pos;
            if (pos >= line.size() || (line[pos] != '0' && line[pos] != '1')) {
                throw ParseError(source, line_no, pos + 1, "expected symbol '0' or '1'");
            }
            const auto symbol = static_cast<Symbol>(line[pos] - '0');
            if (!runs.empty() && runs.back().symbol == symbol) {
                throw ParseError(source, line_no, token_start + 1,
                                 "adjacent runs share a symbol (non-canonical encoding)");
            }
            runs.push_back({symbol, count});
            ++pos;
            if (pos == line.size()) break;
            if (line[pos] != ' ') throw ParseError(source, line_no, pos + 1, "expected single space");
            ++pos;
        }
        try {
            out.emplace_back(std::move(runs));
        } catch (const Error& e) {
            throw ParseError(source, line_no, 1, e.what());
        }
    });
    return out;
}

std::string format_bits(const BinarySeries& x) { return x.to_string(); }

std::string format_rle(const RleSeries& x) {
    std::string out;
    for (std::size_t i = 0; i < x.run_count(); ++i) {
        if (i) out.push_back(' ');
        out += std::to_string(x[i].length);
        out.push_back('*');
        out.push_back(static_cast<char>('0' + x[i].symbol));
    }
    return out;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, 0, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

}  // namespace bdtw
