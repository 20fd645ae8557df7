#ifndef BDTW_REDUCTION_HPP
#define BDTW_REDUCTION_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "bdtw/matching.hpp"
#include "bdtw/series.hpp"

namespace bdtw {

/// Either an immediate answer or up to four selection instances; DTW is the
/// minimum over instances of (offset + optimal non-adjacent r-sum).
struct ReductionOutput {
    std::optional<std::int64_t> shortcut;
    std::vector<SubseqInstance> instances;
};

/// Reduces DTW(x, y) to selection instances in O(k + l) without decoding.
///
/// If the first symbols differ, one of the two first runs is absorbed by the
/// other series at the cost of its length; likewise at the end. Once both
/// ends agree, the series with more runs (p against q) must have (p - q) / 2
/// pairwise non-adjacent internal runs covered, and each covered run costs
/// its length. Weights are therefore that series' internal run lengths.
ReductionOutput reduce(const RleSeries& x, const RleSeries& y);

/// DTW(x, y) == 0 iff the run-symbol sequences coincide.
bool dtw_zero_test(const RleSeries& x, const RleSeries& y) noexcept;

/// Combines a reduction with a per-instance solver returning offset + optimum.
template <class Solver>
std::int64_t combine(const ReductionOutput& out, Solver&& solve) {
    if (out.shortcut) return *out.shortcut;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const SubseqInstance& inst : out.instances) {
        // The optimum of an instance is at least its offset.
        if (inst.offset() < best) best = std::min(best, solve(inst));
    }
    return best;
}

}  // namespace bdtw

#endif  // BDTW_REDUCTION_HPP
