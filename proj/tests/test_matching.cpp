#include <doctest.h>

#include <algorithm>
#include <memory>
#include <numeric>
#include <span>

#include "bdtw/error.hpp"
#include "bdtw/matching.hpp"
#include "bdtw/oracle.hpp"
#include "bdtw/rng.hpp"

using namespace bdtw;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected bdtw::Error");
    return ErrorCode::kInvalidSeries;
}

Weight total(const std::vector<Weight>& w) { return std::accumulate(w.begin(), w.end(), Weight{0}); }

bool valid_matching(const std::vector<std::size_t>& sel) {
    for (std::size_t i = 1; i < sel.size(); ++i) {
        if (sel[i] < sel[i - 1] + 2) return false;
    }
    return true;
}

std::vector<Weight> random_weights(SplitMix64& rng, std::size_t s, Weight max_weight) {
    std::vector<Weight> w(s);
    for (auto& v : w) v = 1 + static_cast<Weight>(rng.below(static_cast<std::uint64_t>(max_weight)));
    return w;
}

}  // namespace

TEST_CASE("instance invariants") {
    CHECK(code_of([] { SubseqInstance({2, 9}, 2); }) == ErrorCode::kInfeasible);
    CHECK(code_of([] { SubseqInstance({}, 1); }) == ErrorCode::kInfeasible);
    CHECK_THROWS_AS(SubseqInstance({1, 0, 1}, 1), std::invalid_argument);
    CHECK_THROWS_AS(SubseqInstance({1}, 1, -1), std::invalid_argument);
    CHECK(SubseqInstance({}, 0, 3).total_weight() == 0);
    CHECK(SubseqInstance({1, 2, 3}, 2).total_weight() == 6);
}

TEST_CASE("solve_tree examples") {
    CHECK(solve_tree(SubseqInstance({5, 1, 5}, 1)) == 1);
    CHECK(solve_tree(SubseqInstance({3, 1, 4, 1, 5}, 2)) == 2);
    CHECK(solve_tree(SubseqInstance({4, 1, 4}, 2)) == 8);
    CHECK(solve_tree(SubseqInstance({4, 1, 4}, 2, 10)) == 18);
    CHECK(solve_tree(SubseqInstance({7}, 0, 5)) == 5);
}

TEST_CASE("solve_bucket examples") {
    const SubseqInstance a({1, 10, 1, 10, 1}, 3);
    CHECK(solve_bucket(a, 23) == 3);
    CHECK(delta_trace_bucket(a, 23) == std::vector<Weight>{1, 1, 1});

    const SubseqInstance b({4, 1, 4}, 2);
    CHECK(solve_bucket(b, 9) == 8);
    CHECK(delta_trace_bucket(b, 9) == std::vector<Weight>{1, 7});

    CHECK(solve_bucket(SubseqInstance({7}, 0), 7) == 0);
}

TEST_CASE("bucket key bound") {
    // Initial empty-chain keys are the weights themselves.
    CHECK(code_of([] { solve_bucket(SubseqInstance({4, 1, 4}, 1), 3); }) == ErrorCode::kKeyBoundExceeded);
    // Key 7 only appears after the first augmentation.
    CHECK(code_of([] { solve_bucket(SubseqInstance({4, 1, 4}, 2), 4); }) == ErrorCode::kKeyBoundExceeded);
    CHECK(code_of([] { BucketQueue(Weight{1} << 40); }) == ErrorCode::kTooLarge);
}

TEST_CASE("delta_trace examples") {
    CHECK(delta_trace(SubseqInstance({1, 10, 1, 10, 1}, 3)) == std::vector<Weight>{1, 1, 1});
    CHECK(delta_trace(SubseqInstance({4, 1, 4}, 2)) == std::vector<Weight>{1, 7});
    CHECK(delta_trace(SubseqInstance({6, 2, 9}, 1)) == std::vector<Weight>{2});
    CHECK(delta_trace(SubseqInstance({6, 2, 9}, 0)).empty());
}

TEST_CASE("step examples") {
    SUBCASE("augmentation replaces the middle edge by both outer edges") {
        const std::vector<Weight> w{4, 1, 4};
        TreeMatching state(w, OrderedQueue{});
        CHECK(state.step() == 1);
        CHECK(state.chains() == std::vector<Chain>{{1, 1}});
        CHECK(state.step() == 7);
        CHECK(state.chains() == std::vector<Chain>{{0, 2}});
        CHECK(state.weight() == 8);
        CHECK(code_of([&] { state.step(); }) == ErrorCode::kExhausted);
    }
    SUBCASE("ties resolve to the lowest left endpoint") {
        const std::vector<Weight> w{1, 1, 1};
        TreeMatching state(w, OrderedQueue{});
        CHECK(state.step() == 1);
        CHECK(state.selected() == std::vector<std::size_t>{0});
        CHECK(state.step() == 1);
        CHECK(state.selected() == std::vector<std::size_t>{0, 2});
        CHECK(state.chains() == std::vector<Chain>{{0, 2}});
    }
    SUBCASE("fresh state selects an argmin edge") {
        const std::vector<Weight> w{5, 3, 8, 3, 9};
        TreeMatching state(w, OrderedQueue{});
        CHECK(state.step() == 3);
        CHECK(state.chains() == std::vector<Chain>{{1, 1}});
    }
    SUBCASE("augmentation merges chains on both sides") {
        // After {e0}, {e6} and {e3}, augmenting {e3} yields {e2, e4}, which
        // joins {e0} on the left and {e6} on the right.
        const std::vector<Weight> w{1, 50, 3, 2, 3, 50, 1};
        TreeMatching state(w, OrderedQueue{});
        CHECK(state.step() == 1);
        CHECK(state.step() == 1);
        CHECK(state.step() == 2);
        CHECK(state.chains() == std::vector<Chain>{{0, 0}, {3, 3}, {6, 6}});
        CHECK(state.step() == 4);
        CHECK(state.chains() == std::vector<Chain>{{0, 6}});
        CHECK(state.weight() == 8);
        CHECK(state.weight() == oracle::matching_enum(w, 4));
    }
    SUBCASE("empty path") {
        TreeMatching state(std::span<const Weight>{}, OrderedQueue{});
        CHECK(code_of([&] { state.step(); }) == ErrorCode::kExhausted);
    }
}

TEST_CASE("exhaustive small instances agree with the oracles") {
    // Every weight vector over {1..4} with s <= 7, every feasible r.
    for (std::size_t s = 1; s <= 7; ++s) {
        std::vector<Weight> w(s, 1);
        while (true) {
            TreeMatching tree(w, OrderedQueue{});
            BucketMatching bucket(w, BucketQueue(total(w)));
            for (std::size_t i = 1; i <= max_matching_size(s); ++i) {
                tree.step();
                bucket.step();
                const Weight expected = oracle::matching_enum(w, i);
                REQUIRE(tree.weight() == expected);
                REQUIRE(bucket.weight() == expected);
                REQUIRE(oracle::subseq_dp(w, i) == expected);
            }
            std::size_t d = 0;
            while (d < s && w[d] == 4) w[d++] = 1;
            if (d == s) break;
            ++w[d];
        }
    }
}

TEST_CASE("random instances: oracle equivalence, monotone deltas, valid matchings") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t s = trial < 1500 ? 1 + rng.below(16) : 1 + rng.below(400);
        const auto w = random_weights(rng, s, trial % 2 ? 20 : 1000);
        const std::size_t r = rng.below(max_matching_size(s) + 1);
        const SubseqInstance inst(w, r, static_cast<Weight>(rng.below(5)));

        const Weight expected = oracle::subseq_dp(inst);
        CHECK(solve_tree(inst) == expected);
        CHECK(solve_bucket(inst, inst.total_weight()) == expected);

        const auto deltas = delta_trace(inst);
        REQUIRE(deltas.size() == r);
        CHECK(std::is_sorted(deltas.begin(), deltas.end()));
        CHECK(std::accumulate(deltas.begin(), deltas.end(), inst.offset()) == expected);
        CHECK(delta_trace_bucket(inst, inst.total_weight()) == deltas);
        if (r > 0) CHECK(deltas.front() == *std::min_element(w.begin(), w.end()));
    }
}

TEST_CASE("intermediate matchings are optimal and valid") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t s = 1 + rng.below(14);
        const auto w = random_weights(rng, s, 20);
        TreeMatching tree(w, OrderedQueue{});
        BucketMatching bucket(w, BucketQueue(total(w)));
        Weight previous_counter = bucket.queue().counter();
        for (std::size_t i = 1; i <= max_matching_size(s); ++i) {
            tree.step();
            bucket.step();
            const Weight expected = oracle::matching_enum(w, i);
            CHECK(tree.weight() == expected);
            CHECK(bucket.weight() == expected);
            const auto sel = tree.selected();
            CHECK(sel.size() == i);
            CHECK(valid_matching(sel));
            CHECK(valid_matching(bucket.selected()));
            CHECK(bucket.queue().counter() >= previous_counter);
            previous_counter = bucket.queue().counter();
        }
        CHECK(tree.queue().empty());
        CHECK(bucket.queue().empty());
        CHECK(bucket.queue().lowest_scanned() >= 1);
    }
}

TEST_CASE("large weights on the ordered backend") {
    const Weight big = Weight{1} << 40;
    const SubseqInstance inst({big, 3, big, big + 1, big, 3, big}, 3);
    CHECK(solve_tree(inst) == oracle::subseq_dp(inst));
}

TEST_CASE("window instances share a pool") {
    const auto pool = std::make_shared<const std::vector<Weight>>(std::vector<Weight>{9, 3, 1, 4, 1, 5, 9});
    const SubseqInstance inst(pool, 1, 5, 2, 7);
    CHECK(inst.first() == 1);
    CHECK(inst == SubseqInstance({3, 1, 4, 1, 5}, 2, 7));
    CHECK(inst.total_weight() == 14);
    CHECK(solve_tree(inst) == 9);
    CHECK_THROWS_AS(SubseqInstance(pool, 3, 5, 1), std::invalid_argument);
}

TEST_CASE("restart on windows matches fresh states") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng.below(40);
        const auto w = random_weights(rng, n, 12);
        TreeMatching tree(w, OrderedQueue{});
        BucketMatching bucket(w, BucketQueue(total(w)));
        for (int round = 0; round < 5; ++round) {
            const std::size_t first = rng.below(n + 1);
            const std::size_t count = rng.below(n - first + 1);
            const std::span<const Weight> window = std::span<const Weight>(w).subspan(first, count);
            TreeMatching fresh(window, OrderedQueue{});
            BucketMatching fresh_bucket(window, BucketQueue(total(w)));
            tree.restart(first, count);
            bucket.restart(first, count);
            CHECK(bucket.queue().counter() == 1);
            CHECK(tree.queue().count() == count);
            CHECK(bucket.queue().count() == count);
            // Stop early sometimes so the next restart rewinds a partial run.
            const std::size_t steps = rng.below(max_matching_size(count) + 1);
            for (std::size_t i = 0; i < steps; ++i) {
                const Weight d = fresh.step();
                CHECK(tree.step() == d);
                CHECK(bucket.step() == d);
                CHECK(fresh_bucket.step() == d);
                CHECK(bucket.chains() == fresh_bucket.chains());
                CHECK(tree.chains() == fresh.chains());
            }
            CHECK(tree.weight() == fresh.weight());
        }
    }
}

TEST_CASE("solvers reuse state across windows of one pool") {
    SplitMix64 rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 3 + rng.below(60);
        const auto pool = std::make_shared<const std::vector<Weight>>(random_weights(rng, n, 30));
        TreeSolver tree;
        BucketSolver bucket(total(*pool));
        for (int round = 0; round < 4; ++round) {
            const std::size_t first = rng.below(3);
            const std::size_t count = n - first - rng.below(std::min<std::size_t>(3, n - first + 1));
            const std::size_t r = rng.below(max_matching_size(count) + 1);
            const SubseqInstance inst(pool, first, count, r, round);
            const Weight expected = oracle::subseq_dp(inst);
            CHECK(tree(inst) == expected);
            CHECK(bucket(inst) == expected);
        }
    }
}
