#include "bdtw/api.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <stdexcept>
#include <string>

#include "bdtw/matching.hpp"
#include "bdtw/reduction.hpp"

namespace bdtw {

const char* to_string(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::kLinear: return "linear";
        case Algorithm::kRleTree: return "rle_tree";
        case Algorithm::kDp: return "dp";
    }
    return "unknown";
}

const char* to_string(AlgoChoice a) noexcept {
    switch (a) {
        case AlgoChoice::kAuto: return "auto";
        case AlgoChoice::kLinear: return "linear";
        case AlgoChoice::kRle: return "rle";
        case AlgoChoice::kDp: return "dp";
    }
    return "unknown";
}

AlgoChoice parse_algo_choice(std::string_view name) {
    if (name == "auto") return AlgoChoice::kAuto;
    if (name == "linear") return AlgoChoice::kLinear;
    if (name == "rle") return AlgoChoice::kRle;
    if (name == "dp") return AlgoChoice::kDp;
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t nanos_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

void fill_sizes(DtwResult& r, const RleSeries& x, const RleSeries& y) {
    r.n = x.total_length();
    r.m = y.total_length();
    r.k = static_cast<std::int64_t>(x.run_count());
    r.l = static_cast<std::int64_t>(y.run_count());
}

}  // namespace

DtwResult dtw_linear(const BinarySeries& x, const BinarySeries& y) {
    const auto start = Clock::now();
    const RleSeries xr = rle_encode(x);
    const RleSeries yr = rle_encode(y);
    const Weight key_bound = std::max(xr.total_length(), yr.total_length());
    DtwResult r;
    r.value = combine(reduce(xr, yr), BucketSolver(key_bound));
    r.elapsed_ns = nanos_since(start);
    r.algorithm = Algorithm::kLinear;
    fill_sizes(r, xr, yr);
    return r;
}

DtwResult dtw_rle(const RleSeries& x, const RleSeries& y) {
    const auto start = Clock::now();
    DtwResult r;
    r.value = combine(reduce(x, y), TreeSolver{});
    r.elapsed_ns = nanos_since(start);
    r.algorithm = Algorithm::kRleTree;
    fill_sizes(r, x, y);
    return r;
}

namespace {

DtwResult dtw_dp_timed(const BinarySeries& x, const BinarySeries& y, const DtwOptions& options) {
    const auto start = Clock::now();
    DtwResult r;
    r.value = oracle::dtw_dp(x, y, options.dp_cell_cap);
    r.elapsed_ns = nanos_since(start);
    r.algorithm = Algorithm::kDp;
    fill_sizes(r, rle_encode(x), rle_encode(y));
    return r;
}

}  // namespace

DtwResult dtw(const BinarySeries& x, const BinarySeries& y, AlgoChoice algo, const DtwOptions& options) {
    switch (algo) {
        case AlgoChoice::kAuto: {
            const auto longest = static_cast<Length>(std::max(x.size(), y.size()));
            if (longest > options.materialization_cap) return dtw_rle(rle_encode(x), rle_encode(y));
            return dtw_linear(x, y);
        }
        case AlgoChoice::kLinear: return dtw_linear(x, y);
        case AlgoChoice::kRle: return dtw_rle(rle_encode(x), rle_encode(y));
        case AlgoChoice::kDp: return dtw_dp_timed(x, y, options);
    }
    throw std::invalid_argument("unknown algorithm choice");
}

DtwResult dtw(const RleSeries& x, const RleSeries& y, AlgoChoice algo, const DtwOptions& options) {
    switch (algo) {
        case AlgoChoice::kAuto:
        case AlgoChoice::kRle: return dtw_rle(x, y);
        case AlgoChoice::kLinear:
            return dtw_linear(rle_decode(x, options.materialization_cap), rle_decode(y, options.materialization_cap));
        case AlgoChoice::kDp:
            return dtw_dp_timed(rle_decode(x, options.materialization_cap),
                                rle_decode(y, options.materialization_cap), options);
    }
    throw std::invalid_argument("unknown algorithm choice");
}

std::vector<DtwResult> dtw_batch(std::span<const SeriesPair> pairs, AlgoChoice algo, const DtwOptions& options) {
    std::vector<DtwResult> results(pairs.size());
    std::exception_ptr failure;
    const auto count = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            const auto& [x, y] = pairs[static_cast<std::size_t>(i)];
            results[static_cast<std::size_t>(i)] = dtw(x, y, algo, options);
        } catch (...) {
#pragma omp critical(bdtw_batch_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

std::vector<DtwResult> dtw_batch_serial(std::span<const SeriesPair> pairs, AlgoChoice algo,
                                        const DtwOptions& options) {
    std::vector<DtwResult> results;
    results.reserve(pairs.size());
    for (const auto& [x, y] : pairs) results.push_back(dtw(x, y, algo, options));
    return results;
}

}  // namespace bdtw
