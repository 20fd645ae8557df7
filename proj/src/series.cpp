#include "bdtw/series.hpp"

#include <limits>

#include "bdtw/error.hpp"
#include "bdtw/rng.hpp"

namespace bdtw {

BinarySeries::BinarySeries(std::vector<Symbol> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) throw Error(ErrorCode::kInvalidSeries, "binary series must be nonempty");
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] > 1) {
            throw Error(ErrorCode::kInvalidSeries,
                        "symbol at index " + std::to_string(i) + " is not 0 or 1");
        }
    }
}

namespace {

std::vector<Symbol> bits_from_text(std::string_view text) {
    std::vector<Symbol> bits;
    bits.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c != '0' && c != '1') {
            throw Error(ErrorCode::kInvalidSeries,
                        "character at index " + std::to_string(i) + " is not '0' or '1'");
        }
        bits.push_back(static_cast<Symbol>(c - '0'));
    }
    return bits;
}

}  // namespace

BinarySeries::BinarySeries(std::string_view text) : BinarySeries(bits_from_text(text)) {}

std::string BinarySeries::to_string() const {
    std::string out(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = static_cast<char>('0' + bits_[i]);
    return out;
}

RleSeries::RleSeries(std::vector<Run> runs) : runs_(std::move(runs)) {
    if (runs_.empty()) throw Error(ErrorCode::kInvalidSeries, "run-length series must be nonempty");
    for (std::size_t i = 0; i < runs_.size(); ++i) {
        const Run& run = runs_[i];
        if (run.symbol > 1) {
            throw Error(ErrorCode::kInvalidSeries, "run " + std::to_string(i) + " has symbol outside {0,1}");
        }
        if (run.length < 1) {
            throw Error(ErrorCode::kInvalidSeries, "run " + std::to_string(i) + " has nonpositive length");
        }
        if (i > 0 && runs_[i - 1].symbol == run.symbol) {
            throw Error(ErrorCode::kInvalidSeries,
                        "runs " + std::to_string(i - 1) + " and " + std::to_string(i) +
                            " share a symbol (non-canonical encoding)");
        }
        if (run.length > std::numeric_limits<Length>::max() - total_length_) {
            throw Error(ErrorCode::kInvalidSeries, "total length overflows 64 bits");
        }
        total_length_ += run.length;
    }
}

RleSeries rle_encode(const BinarySeries& x) {
    const auto bits = x.bits();
    const std::size_t n = bits.size();
    std::size_t boundaries = 0;
    for (std::size_t i = 1; i < n; ++i) boundaries += bits[i] != bits[i - 1];
    // First record where each run ends, without branching on the data, then
    // turn end positions into lengths. Symbols alternate from bits[0].
    std::vector<Run> runs(boundaries + 1);
    std::size_t j = 0;
    for (std::size_t i = 1; i < n; ++i) {
        runs[j].length = static_cast<Length>(i);
        j += bits[i] != bits[i - 1];
    }
    runs[j].length = static_cast<Length>(n);
    Length prev_end = 0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const Length end = runs[r].length;
        runs[r] = {static_cast<Symbol>(bits[0] ^ (r & 1)), end - prev_end};
        prev_end = end;
    }
    return RleSeries(std::move(runs));
}

BinarySeries rle_decode(const RleSeries& x, Length cap) {
    if (x.total_length() > cap) {
        throw Error(ErrorCode::kDecodeTooLarge, "decoded length " + std::to_string(x.total_length()) +
                                                    " exceeds materialization cap " + std::to_string(cap));
    }
    std::vector<Symbol> bits;
    bits.reserve(static_cast<std::size_t>(x.total_length()));
    for (const Run& run : x.runs()) bits.insert(bits.end(), static_cast<std::size_t>(run.length), run.symbol);
    return BinarySeries(std::move(bits));
}

BinarySeries random_expansion(const BinarySeries& x, std::size_t budget, std::uint64_t seed) {
    const RleSeries base = rle_encode(x);
    std::vector<Run> runs(base.runs().begin(), base.runs().end());
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < budget; ++i) ++runs[rng.below(runs.size())].length;
    return rle_decode(RleSeries(std::move(runs)), std::numeric_limits<Length>::max());
}

}  // namespace bdtw
