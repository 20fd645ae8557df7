#ifndef BDTW_GENERATE_HPP
#define BDTW_GENERATE_HPP

// Deterministic series generators driven by SplitMix64. The same
// (spec, size, seed) always yields the same series on every platform.

#include <cstdint>
#include <string>
#include <string_view>

#include "bdtw/series.hpp"

namespace bdtw {

struct GeneratorSpec {
    enum class Kind { kUniform, kBiased, kFewRuns, kAlternating };

    Kind kind = Kind::kUniform;
    double p = 0.5;          // probability of a 1 (uniform, biased)
    std::int64_t runs = 0;   // run count (few_runs)

    /// "uniform", "biased(0.1)", "few_runs(1000)", "alternating"
    std::string name() const;
    /// True when the generator produces run lengths directly.
    bool native_rle() const noexcept { return kind == Kind::kFewRuns; }
};

/// Parses "uniform", "alternating", "biased:P" / "biased(P)" and
/// "few_runs:K" / "few_runs(K)". Throws std::invalid_argument.
GeneratorSpec parse_generator(std::string_view text);

/// Materialized series of exactly `size` symbols.
BinarySeries generate_bits(const GeneratorSpec& spec, std::size_t size, std::uint64_t seed);

/// Run-length series of total length `size`. few_runs never materializes;
/// other generators encode generate_bits.
RleSeries generate_rle(const GeneratorSpec& spec, Length size, std::uint64_t seed);

/// `runs` alternating runs, first symbol random, lengths uniform in
/// [min_length, max_length].
RleSeries random_rle(std::size_t runs, Length min_length, Length max_length, std::uint64_t seed);

}  // namespace bdtw

#endif  // BDTW_GENERATE_HPP
