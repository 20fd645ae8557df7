#ifndef BDTW_API_HPP
#define BDTW_API_HPP

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "bdtw/oracle.hpp"
#include "bdtw/series.hpp"

namespace bdtw {

/// Algorithm that produced a result.
enum class Algorithm { kLinear, kRleTree, kDp };

/// Algorithm requested by the caller.
enum class AlgoChoice { kAuto, kLinear, kRle, kDp };

const char* to_string(Algorithm a) noexcept;
const char* to_string(AlgoChoice a) noexcept;
/// Accepts "auto", "linear", "rle", "dp"; throws std::invalid_argument.
AlgoChoice parse_algo_choice(std::string_view name);

struct DtwResult {
    std::int64_t value = 0;
    Algorithm algorithm = Algorithm::kLinear;
    std::int64_t n = 0;
    std::int64_t m = 0;
    std::int64_t k = 0;
    std::int64_t l = 0;
    std::int64_t elapsed_ns = 0;
};

struct DtwOptions {
    Length materialization_cap = kDefaultMaterializationCap;
    std::uint64_t dp_cell_cap = oracle::kDefaultCellCap;
};

/// O(n + m): encode, reduce, bucket backend with key bound max(n, m).
DtwResult dtw_linear(const BinarySeries& x, const BinarySeries& y);

/// O((k + l) log(k + l)): reduce, ordered backend. Never decodes.
DtwResult dtw_rle(const RleSeries& x, const RleSeries& y);

/// Dispatch. kAuto picks the RLE path for RLE inputs or when a raw input is
/// longer than the materialization cap, and the linear path otherwise.
DtwResult dtw(const BinarySeries& x, const BinarySeries& y, AlgoChoice algo = AlgoChoice::kAuto,
              const DtwOptions& options = {});
DtwResult dtw(const RleSeries& x, const RleSeries& y, AlgoChoice algo = AlgoChoice::kAuto,
              const DtwOptions& options = {});

using SeriesPair = std::pair<BinarySeries, BinarySeries>;

/// Evaluates independent pairs with OpenMP; results keep input order.
std::vector<DtwResult> dtw_batch(std::span<const SeriesPair> pairs, AlgoChoice algo = AlgoChoice::kAuto,
                                 const DtwOptions& options = {});

/// Single-threaded reference for dtw_batch.
std::vector<DtwResult> dtw_batch_serial(std::span<const SeriesPair> pairs, AlgoChoice algo = AlgoChoice::kAuto,
                                        const DtwOptions& options = {});

}  // namespace bdtw

#endif  // BDTW_API_HPP
