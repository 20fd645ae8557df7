#include "bdtw/generate.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "bdtw/rng.hpp"

namespace bdtw {

std::string GeneratorSpec::name() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::kUniform: out << "uniform"; break;
        case Kind::kBiased: out << "biased(" << p << ")"; break;
        case Kind::kFewRuns: out << "few_runs(" << runs << ")"; break;
        case Kind::kAlternating: out << "alternating"; break;
    }
    return out.str();
}

namespace {

// Splits "name:arg" or "name(arg)" into name and argument.
std::pair<std::string_view, std::string_view> split_arg(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon != std::string_view::npos) return {text.substr(0, colon), text.substr(colon + 1)};
    const std::size_t paren = text.find('(');
    if (paren != std::string_view::npos && text.back() == ')') {
        return {text.substr(0, paren), text.substr(paren + 1, text.size() - paren - 2)};
    }
    return {text, {}};
}

}  // namespace

GeneratorSpec parse_generator(std::string_view text) {
    const auto [name, arg] = split_arg(text);
    GeneratorSpec spec;
    if (name == "uniform" && arg.empty()) {
        spec.kind = GeneratorSpec::Kind::kUniform;
    } else if (name == "alternating" && arg.empty()) {
        spec.kind = GeneratorSpec::Kind::kAlternating;
    } else if (name == "biased") {
        spec.kind = GeneratorSpec::Kind::kBiased;
        const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), spec.p);
        if (ec != std::errc{} || ptr != arg.data() + arg.size() || !(spec.p >= 0.0 && spec.p <= 1.0)) {
            throw std::invalid_argument("biased generator needs a probability in [0, 1]");
        }
    } else if (name == "few_runs") {
        spec.kind = GeneratorSpec::Kind::kFewRuns;
        const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), spec.runs);
        if (ec != std::errc{} || ptr != arg.data() + arg.size() || spec.runs < 1) {
            throw std::invalid_argument("few_runs generator needs a positive run count");
        }
    } else {
        throw std::invalid_argument("unknown generator '" + std::string(text) + "'");
    }
    return spec;
}

BinarySeries generate_bits(const GeneratorSpec& spec, std::size_t size, std::uint64_t seed) {
    if (spec.kind == GeneratorSpec::Kind::kFewRuns) {
        return rle_decode(generate_rle(spec, static_cast<Length>(size), seed));
    }
    SplitMix64 rng(seed);
    std::vector<Symbol> bits(size);
    switch (spec.kind) {
        case GeneratorSpec::Kind::kUniform:
            // One draw feeds 64 symbols.
            for (std::size_t i = 0; i < size; i += 64) {
                const std::uint64_t word = rng.next();
                const std::size_t end = std::min(size, i + 64);
                for (std::size_t j = i; j < end; ++j) bits[j] = static_cast<Symbol>(word >> (j - i) & 1U);
            }
            break;
        case GeneratorSpec::Kind::kBiased:
            for (auto& b : bits) b = rng.unit() < spec.p ? 1 : 0;
            break;
        case GeneratorSpec::Kind::kAlternating: {
            const auto first = static_cast<Symbol>(rng.next() & 1U);
            for (std::size_t i = 0; i < size; ++i) bits[i] = static_cast<Symbol>(first ^ (i & 1U));
            break;
        }
        case GeneratorSpec::Kind::kFewRuns: break;
    }
    return BinarySeries(std::move(bits));
}

RleSeries generate_rle(const GeneratorSpec& spec, Length size, std::uint64_t seed) {
    if (spec.kind != GeneratorSpec::Kind::kFewRuns) {
        return rle_encode(generate_bits(spec, static_cast<std::size_t>(size), seed));
    }
    SplitMix64 rng(seed);
    const auto k = static_cast<std::size_t>(std::min<Length>(spec.runs, size));
    // Stars and bars: k-1 sorted cut points over the size-k spare symbols.
    const auto spare = static_cast<std::uint64_t>(size) - k;
    std::vector<std::uint64_t> cuts(k - 1);
    for (auto& c : cuts) c = rng.below(spare + 1);
    std::sort(cuts.begin(), cuts.end());
    std::vector<Run> runs(k);
    auto symbol = static_cast<Symbol>(rng.next() & 1U);
    std::uint64_t prev = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const std::uint64_t cut = i + 1 < k ? cuts[i] : spare;
        runs[i] = {symbol, static_cast<Length>(1 + cut - prev)};
        prev = cut;
        symbol ^= 1U;
    }
    return RleSeries(std::move(runs));
}

RleSeries random_rle(std::size_t runs, Length min_length, Length max_length, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const auto span = static_cast<std::uint64_t>(max_length - min_length) + 1;
    std::vector<Run> out(runs);
    auto symbol = static_cast<Symbol>(rng.next() & 1U);
    for (auto& run : out) {
        run = {symbol, min_length + static_cast<Length>(rng.below(span))};
        symbol ^= 1U;
    }
    return RleSeries(std::move(out));
}

}  // namespace bdtw
