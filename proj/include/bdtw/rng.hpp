#ifndef BDTW_RNG_HPP
#define BDTW_RNG_HPP

#include <cstdint>

namespace bdtw {

__extension__ using Uint128 = unsigned __int128;

/// SplitMix64 (Steele, Lea, Flood 2014). Every generator in this project
/// draws from it so that output depends only on the seed, never on the
/// standard library's distribution implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by multiply-shift; bound must be > 0.
    std::uint64_t below(std::uint64_t bound) noexcept {
        return static_cast<std::uint64_t>((static_cast<Uint128>(next()) * bound) >> 64);
    }

    // Uniform in [0, 1) with 53 bits.
    double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Derives an independent stream seed from (seed, stream).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    SplitMix64 g(seed ^ (stream * 0xd1b54a32d192ed03ULL));
    return g.next();
}

}  // namespace bdtw

#endif  // BDTW_RNG_HPP
