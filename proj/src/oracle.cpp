#include "bdtw/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>
#include <vector>

#include "bdtw/error.hpp"

namespace bdtw::oracle {

namespace {
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 2;
}

std::int64_t dtw_dp(const BinarySeries& x, const BinarySeries& y, std::uint64_t cell_cap) {
    const std::size_t n = x.size();
    const std::size_t m = y.size();
    if (n > cell_cap / m) {
        throw Error(ErrorCode::kTooLarge, "DP table " + std::to_string(n) + "x" + std::to_string(m) +
                                              " exceeds cell cap " + std::to_string(cell_cap));
    }
    // prev/cur hold D[i-1][*] and D[i][*]; index 0 is the infinite border.
    std::vector<std::int64_t> prev(m + 1, kInf);
    std::vector<std::int64_t> cur(m + 1, kInf);
    prev[0] = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = kInf;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::int64_t cost = x[i - 1] != y[j - 1] ? 1 : 0;
            cur[j] = cost + std::min({prev[j], cur[j - 1], prev[j - 1]});
        }
        std::swap(prev, cur);
        prev[0] = kInf;
    }
    return prev[m];
}

std::int64_t subseq_dp(std::span<const std::int64_t> weights, std::size_t r, std::int64_t offset) {
    const std::size_t s = weights.size();
    if (r > (s + 1) / 2) throw Error(ErrorCode::kInfeasible, "r exceeds ceil(s/2)");
    // Rows best[j-2], best[j-1], best[j] over counts 0..r.
    std::vector<std::int64_t> two_back(r + 1, kInf);
    std::vector<std::int64_t> one_back(r + 1, kInf);
    std::vector<std::int64_t> cur(r + 1, kInf);
    two_back[0] = 0;  // j = -1: nothing chosen
    one_back[0] = 0;  // j = 0
    for (std::size_t j = 1; j <= s; ++j) {
        cur[0] = 0;
        for (std::size_t c = 1; c <= r; ++c) {
            const std::int64_t take = two_back[c - 1] >= kInf ? kInf : two_back[c - 1] + weights[j - 1];
            cur[c] = std::min(one_back[c], take);
        }
        std::swap(two_back, one_back);
        std::swap(one_back, cur);
    }
    return offset + one_back[r];
}

std::int64_t subseq_dp(const SubseqInstance& inst) { return subseq_dp(inst.weights(), inst.r(), inst.offset()); }

std::int64_t matching_enum(std::span<const std::int64_t> weights, std::size_t i) {
    const std::size_t s = weights.size();
    if (s > kEnumerationLimit) {
        throw Error(ErrorCode::kTooLarge, "enumeration limited to " + std::to_string(kEnumerationLimit) + " weights");
    }
    std::int64_t best = kInf;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << s); ++mask) {
        if ((mask & (mask >> 1)) != 0 || static_cast<std::size_t>(std::popcount(mask)) != i) continue;
        std::int64_t total = 0;
        for (std::size_t b = 0; b < s; ++b) {
            if (mask >> b & 1U) total += weights[b];
        }
        best = std::min(best, total);
    }
    if (best == kInf) throw Error(ErrorCode::kInfeasible, "no matching of the requested size");
    return best;
}

}  // namespace bdtw::oracle
