#ifndef BDTW_ORACLE_HPP
#define BDTW_ORACLE_HPP

// Deliberately naive reference solvers. They share nothing with the fast
// paths beyond the input types and exist to check them.

#include <cstddef>
#include <cstdint>
#include <span>

#include "bdtw/matching.hpp"
#include "bdtw/series.hpp"

namespace bdtw::oracle {

inline constexpr std::uint64_t kDefaultCellCap = 100'000'000;
inline constexpr std::size_t kEnumerationLimit = 24;

/// Textbook O(nm) DTW with |x_i - y_j| costs and rolling rows. Throws
/// Error(kTooLarge) when n*m exceeds cell_cap.
std::int64_t dtw_dp(const BinarySeries& x, const BinarySeries& y, std::uint64_t cell_cap = kDefaultCellCap);

/// O(s*r) DP: best[j][c] = min(best[j-1][c], best[j-2][c-1] + w_j).
/// Throws Error(kInfeasible) if r > ceil(s/2).
std::int64_t subseq_dp(std::span<const std::int64_t> weights, std::size_t r, std::int64_t offset = 0);
std::int64_t subseq_dp(const SubseqInstance& inst);

/// Minimum weight over all i-edge matchings by enumerating subsets.
/// Throws Error(kTooLarge) for more than kEnumerationLimit weights and
/// Error(kInfeasible) if no i-edge matching exists.
std::int64_t matching_enum(std::span<const std::int64_t> weights, std::size_t i);

}  // namespace bdtw::oracle

#endif  // BDTW_ORACLE_HPP
