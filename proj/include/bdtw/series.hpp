#ifndef BDTW_SERIES_HPP
#define BDTW_SERIES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bdtw {

using Symbol = std::uint8_t;
using Length = std::int64_t;

/// Largest decoded length that rle_decode will materialize by default.
inline constexpr Length kDefaultMaterializationCap = Length{1} << 28;

/// A nonempty binary time series stored one symbol per byte.
class BinarySeries {
public:
    explicit BinarySeries(std::vector<Symbol> bits);
    /// Accepts ASCII '0'/'1' only.
    explicit BinarySeries(std::string_view text);

    std::size_t size() const noexcept { return bits_.size(); }
    Symbol operator[](std::size_t i) const noexcept { return bits_[i]; }
    std::span<const Symbol> bits() const noexcept { return bits_; }
    std::string to_string() const;

    friend bool operator==(const BinarySeries&, const BinarySeries&) = default;

private:
    std::vector<Symbol> bits_;
};

struct Run {
    Symbol symbol;
    Length length;

    friend bool operator==(const Run&, const Run&) = default;
};

/// Canonical run-length encoding: nonempty, positive lengths, adjacent runs
/// alternate symbols, total length fits in a signed 64-bit integer.
class RleSeries {
public:
    explicit RleSeries(std::vector<Run> runs);

    std::span<const Run> runs() const noexcept { return runs_; }
    std::size_t run_count() const noexcept { return runs_.size(); }
    const Run& operator[](std::size_t i) const noexcept { return runs_[i]; }
    const Run& front() const noexcept { return runs_.front(); }
    const Run& back() const noexcept { return runs_.back(); }
    Length total_length() const noexcept { return total_length_; }

    friend bool operator==(const RleSeries& a, const RleSeries& b) { return a.runs_ == b.runs_; }

private:
    std::vector<Run> runs_;
    Length total_length_ = 0;
};

RleSeries rle_encode(const BinarySeries& x);

/// Throws Error(kDecodeTooLarge) when the decoded length exceeds `cap`.
BinarySeries rle_decode(const RleSeries& x, Length cap = kDefaultMaterializationCap);

/// Expansion of `x` of length x.size() + budget; each extra symbol extends a
/// run chosen uniformly at random. Deterministic in `seed`.
BinarySeries random_expansion(const BinarySeries& x, std::size_t budget, std::uint64_t seed);

/// True iff both series have the same run-symbol sequence. Runs alternate, so
/// this only compares the first symbol and the run count.
inline bool same_run_symbols(const RleSeries& x, const RleSeries& y) noexcept {
    return x.run_count() == y.run_count() && x.front().symbol == y.front().symbol;
}

}  // namespace bdtw

#endif  // BDTW_SERIES_HPP
