#include "bench_report.hpp"

#include <algorithm>

#include "bdtw/rng.hpp"

namespace bdtw::tools {

namespace {

DtwResult run_once(const GeneratorSpec& gen, std::int64_t size, AlgoChoice algo, std::uint64_t seed) {
    const auto stream = static_cast<std::uint64_t>(size) * 2;
    const std::uint64_t seed_x = mix_seed(seed, stream);
    const std::uint64_t seed_y = mix_seed(seed, stream + 1);
    if (gen.native_rle() || algo == AlgoChoice::kRle) {
        return dtw(generate_rle(gen, size, seed_x), generate_rle(gen, size, seed_y), algo);
    }
    const auto n = static_cast<std::size_t>(size);
    return dtw(generate_bits(gen, n, seed_x), generate_bits(gen, n, seed_y), algo);
}

}  // namespace

BenchReport run_bench(const GeneratorSpec& gen, std::span<const std::int64_t> sizes,
                      std::span<const AlgoChoice> algos, int trials, std::uint64_t seed) {
    BenchReport report;
    report.seed = seed;
    report.trials = trials;
    for (const std::int64_t size : sizes) {
        for (const AlgoChoice algo : algos) {
            std::vector<std::int64_t> times;
            DtwResult last;
            for (int t = 0; t < trials; ++t) {
                last = run_once(gen, size, algo, seed);
                times.push_back(last.elapsed_ns);
            }
            std::sort(times.begin(), times.end());
            BenchRow row;
            row.generator = gen.name();
            row.size = size;
            row.algorithm = to_string(last.algorithm);
            row.median_ns = times.empty() ? 0 : times[times.size() / 2];
            row.checksum = last.value;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

nlohmann::ordered_json to_json(const BenchReport& report) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const BenchRow& row : report.rows) {
        rows.push_back({{"generator", row.generator},
                        {"size", row.size},
                        {"algorithm", row.algorithm},
                        {"median_ns", row.median_ns},
                        {"checksum", row.checksum}});
    }
    return {{"seed", report.seed}, {"trials", report.trials}, {"rows", std::move(rows)}};
}

nlohmann::ordered_json to_json(const DtwResult& r) {
    return {{"value", r.value}, {"algorithm", to_string(r.algorithm)},
            {"n", r.n}, {"m", r.m}, {"k", r.k}, {"l", r.l}, {"elapsed_ns", r.elapsed_ns}};
}

}  // namespace bdtw::tools
