#include "bdtw/reduction.hpp"

#include <array>
#include <memory>
#include <vector>

namespace bdtw {

namespace {

struct Trim {
    std::size_t x = 0;  // runs dropped from x
    std::size_t y = 0;  // runs dropped from y
    std::int64_t cost = 0;
};

std::int64_t single_run_distance(const Run& single, const RleSeries& other) {
    std::int64_t opposite = 0;
    for (const Run& run : other.runs()) {
        if (run.symbol != single.symbol) opposite += run.length;
    }
    // With no run to rest on, the single run and the other series mismatch
    // everywhere along a path of length max(n, m).
    if (other.run_count() == 1) return std::max(single.length, other.total_length());
    return opposite;
}

using Pool = std::shared_ptr<const std::vector<Weight>>;

Pool run_lengths(const RleSeries& x) {
    std::vector<Weight> lengths;
    lengths.reserve(x.run_count());
    for (const Run& run : x.runs()) lengths.push_back(run.length);
    return std::make_shared<const std::vector<Weight>>(std::move(lengths));
}

// Runs [first, first + count) of each side remain and their ends agree. The
// longer side covers (p - q) / 2 of its internal runs.
struct Side {
    const RleSeries* series;
    Pool* pool;
    std::size_t first;
    std::size_t count;
};

SubseqInstance aligned_instance(Side u, Side v, std::int64_t offset) {
    if (u.count < v.count) std::swap(u, v);
    if (!*u.pool) *u.pool = run_lengths(*u.series);
    const std::size_t internal = u.count > 2 ? u.count - 2 : 0;
    return SubseqInstance(*u.pool, u.first + 1, internal, (u.count - v.count) / 2, offset);
}

}  // namespace

bool dtw_zero_test(const RleSeries& x, const RleSeries& y) noexcept { return same_run_symbols(x, y); }

ReductionOutput reduce(const RleSeries& x, const RleSeries& y) {
    ReductionOutput out;
    if (dtw_zero_test(x, y)) {
        out.shortcut = 0;
        return out;
    }
    if (x.run_count() == 1) {
        out.shortcut = single_run_distance(x.front(), y);
        return out;
    }
    if (y.run_count() == 1) {
        out.shortcut = single_run_distance(y.front(), x);
        return out;
    }

    std::array<Trim, 2> starts{};
    std::size_t start_count = 1;
    if (x.front().symbol != y.front().symbol) {
        starts = {Trim{1, 0, x.front().length}, Trim{0, 1, y.front().length}};
        start_count = 2;
    }
    std::array<Trim, 2> ends{};
    std::size_t end_count = 1;
    if (x.back().symbol != y.back().symbol) {
        ends = {Trim{1, 0, x.back().length}, Trim{0, 1, y.back().length}};
        end_count = 2;
    }

    const std::size_t k = x.run_count();
    const std::size_t l = y.run_count();
    Pool x_pool;
    Pool y_pool;
    for (std::size_t a = 0; a < start_count; ++a) {
        for (std::size_t b = 0; b < end_count; ++b) {
            const Trim& head = starts[a];
            const Trim& tail = ends[b];
            if (head.x + tail.x >= k || head.y + tail.y >= l) continue;
            const Side u{&x, &x_pool, head.x, k - head.x - tail.x};
            const Side v{&y, &y_pool, head.y, l - head.y - tail.y};
            out.instances.push_back(aligned_instance(u, v, head.cost + tail.cost));
        }
    }
    return out;
}

}  // namespace bdtw
