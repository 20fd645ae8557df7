#ifndef BDTW_TOOLS_BENCH_REPORT_HPP
#define BDTW_TOOLS_BENCH_REPORT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bdtw/api.hpp"
#include "bdtw/generate.hpp"

namespace bdtw::tools {

struct BenchRow {
    std::string generator;
    std::int64_t size = 0;
    std::string algorithm;
    std::int64_t median_ns = 0;
    // DTW value of the generated pair; equal across algorithms for a cell.
    std::int64_t checksum = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::uint64_t seed = 0;
    int trials = 0;
};

/// One pair per size: x uses stream 2*size, y stream 2*size+1 of `seed`.
/// Rows are ordered by size, then by the order of `algos`.
BenchReport run_bench(const GeneratorSpec& gen, std::span<const std::int64_t> sizes,
                      std::span<const AlgoChoice> algos, int trials, std::uint64_t seed);

nlohmann::ordered_json to_json(const BenchReport& report);
nlohmann::ordered_json to_json(const DtwResult& result);

}  // namespace bdtw::tools

#endif  // BDTW_TOOLS_BENCH_REPORT_HPP
