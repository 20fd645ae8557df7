#ifndef BDTW_MATCHING_HPP
#define BDTW_MATCHING_HPP

// Minimum-weight r-edge matching on a weighted path graph, i.e. choosing r
// pairwise non-adjacent entries of w[0..s) with minimum sum.
//
// The matching is grown one edge at a time by augmenting the maximal chain
// (edges at stride 2) whose augmentation is cheapest. Every intermediate
// matching M_i is optimal among i-edge matchings and the increments
// delta_i = wt(M_i) - wt(M_{i-1}) are nondecreasing, which is what lets the
// bucket backend scan its keys forward only.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <new>
#include <span>
#include <utility>
#include <vector>

namespace bdtw {

using Weight = std::int64_t;

/// Largest matching in a path graph with s edges.
constexpr std::size_t max_matching_size(std::size_t s) noexcept { return (s + 1) / 2; }

/// Weights w_1..w_s (all >= 1), target count r <= ceil(s/2) and a constant
/// offset added to the optimum.
class SubseqInstance {
public:
    /// Throws Error(kInfeasible) if r > ceil(s/2), std::invalid_argument on a
    /// nonpositive weight, negative offset or 64-bit overflow of the total.
    SubseqInstance(std::vector<Weight> weights, std::size_t r, Weight offset = 0);
    /// Uses pool[first, first + count) as the weights without copying them.
    SubseqInstance(std::shared_ptr<const std::vector<Weight>> pool, std::size_t first, std::size_t count,
                   std::size_t r, Weight offset = 0);

    std::span<const Weight> weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return weights_.size(); }
    std::size_t r() const noexcept { return r_; }
    Weight offset() const noexcept { return offset_; }
    Weight total_weight() const noexcept { return total_; }
    /// The buffer the weights are a window of, and where the window starts.
    const std::shared_ptr<const std::vector<Weight>>& pool() const noexcept { return pool_; }
    std::span<const Weight> base() const noexcept { return *pool_; }
    std::size_t first() const noexcept { return static_cast<std::size_t>(weights_.data() - pool_->data()); }

    friend bool operator==(const SubseqInstance& a, const SubseqInstance& b);

private:
    void validate();

    std::shared_ptr<const std::vector<Weight>> pool_;
    std::span<const Weight> weights_;
    std::size_t r_;
    Weight offset_;
    Weight total_ = 0;
};

/// Allocator that starts buffers on a cache line boundary.
template <class T>
struct LineAligned {
    using value_type = T;
    static constexpr std::align_val_t kAlign{64};

    LineAligned() = default;
    template <class U>
    LineAligned(const LineAligned<U>&) noexcept {}

    T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), kAlign)); }
    void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, kAlign); }

    friend bool operator==(const LineAligned&, const LineAligned&) = default;
};

// Both queues record inserts and erases after reset() so that rollback() can
// undo them in reverse order and return to the reset() contents. Past half
// the reset() size a rebuild is cheaper, so recording stops there and
// can_rollback() turns false.

/// Candidate priority structure ordered by (key, left endpoint): a binary
/// tournament tree over positions in which every internal node holds the
/// smaller of its children. Leaf changes are propagated lazily, together, on
/// the next pop_min(); a step's changes sit next to each other and share most
/// of their paths. O(log s) per operation.
class OrderedQueue {
public:
    void reset(std::span<const Weight> initial_keys);
    void insert(std::size_t pos, Weight key);
    void erase(std::size_t pos);
    bool contains(std::size_t pos) const noexcept { return tree_[leaves_ + pos].pos != kNone; }
    bool empty() const noexcept { return count_ == 0; }
    std::size_t count() const noexcept { return count_; }
    std::pair<std::size_t, Weight> pop_min();
    void rollback();
    bool can_rollback() const noexcept { return !log_full_; }

private:
    static constexpr std::int32_t kNone = std::numeric_limits<std::int32_t>::max();

    // Absent leaves hold {max, kNone}, which orders after every candidate.
    struct Entry {
        Weight key = std::numeric_limits<Weight>::max();
        std::int32_t pos = kNone;

        friend bool operator==(const Entry&, const Entry&) = default;
        friend bool operator<(const Entry& a, const Entry& b) noexcept {
            return a.key < b.key || (a.key == b.key && a.pos < b.pos);
        }
    };
    struct Undo {
        bool inserted;
        Entry entry;
    };

    Entry smallest_child(std::size_t i) const noexcept { return std::min(tree_[2 * i], tree_[2 * i + 1]); }
    void set_leaf(std::size_t pos, const Entry& e);
    void flush();
    void record(const Undo& u);

    // Root at 1, node i has children 2i and 2i + 1, position p is leaf
    // leaves_ + p. Nodes up to kCachedTop fit comfortably in cache.
    static constexpr std::size_t kCachedTop = std::size_t{1} << 14;
    std::size_t leaves_ = 1;
    std::vector<Entry, LineAligned<Entry>> tree_;  // sibling pairs never straddle a line
    std::vector<std::size_t> dirty_;  // nodes whose ancestors are stale
    std::size_t count_ = 0;
    std::size_t positions_ = 0;
    std::vector<Undo> log_;
    bool log_full_ = false;
};

/// Monotone bucket queue over keys [1, key_bound]. Extraction advances a
/// counter that never moves backwards, so a full run costs O(s + key_bound).
class BucketQueue {
public:
    /// Throws Error(kTooLarge) when key_bound buckets cannot be indexed.
    explicit BucketQueue(Weight key_bound);

    void reset(std::span<const Weight> initial_keys);
    /// Throws Error(kKeyBoundExceeded) if key > key_bound.
    void insert(std::size_t pos, Weight key);
    void erase(std::size_t pos);
    bool contains(std::size_t pos) const noexcept { return key_[pos] >= 0; }
    bool empty() const noexcept { return count_ == 0; }
    std::size_t count() const noexcept { return count_; }
    std::pair<std::size_t, Weight> pop_min();
    /// Also rewinds the scan counter to 1.
    void rollback();
    bool can_rollback() const noexcept { return !log_full_; }

    Weight key_bound() const noexcept { return bound_; }
    /// Index of the bucket the scan currently sits at.
    Weight counter() const noexcept { return t_; }
    /// Lowest bucket index ever inspected by the scan since reset/rollback.
    Weight lowest_scanned() const noexcept { return lowest_scanned_; }

private:
    struct Undo {
        bool inserted;
        std::int32_t pos;
        std::int32_t key;
        std::int32_t prev;
        std::int32_t next;
    };

    void link(std::size_t pos, Weight key);
    void unlink(std::size_t pos);
    void record(const Undo& u);

    Weight bound_;
    Weight t_ = 1;  // keys are >= 1
    Weight lowest_scanned_;
    std::size_t count_ = 0;
    std::vector<std::int32_t> head_;  // grown on demand up to bound_ + 1
    std::vector<std::int32_t> next_;
    std::vector<std::int32_t> prev_;
    std::vector<std::int32_t> key_;
    std::vector<Undo> log_;
    bool log_full_ = false;
};

struct Chain {
    std::size_t left;
    std::size_t right;

    friend bool operator==(const Chain&, const Chain&) = default;
};

/// Incremental matching state M_i on a window of a weight array that must
/// outlive the state. The queue holds one candidate per position p: the
/// chain whose left endpoint is p, or the empty chain at p when p and both
/// neighbours are unmatched. Chains touching either end of the window cannot
/// grow and are never candidates. Positions reported by selected() and
/// chains() are relative to the window.
template <class Queue>
class MatchingState {
public:
    /// Starts at M_0 on all of `weights`; O(s) plus the queue's reset.
    MatchingState(std::span<const Weight> weights, Queue queue);

    /// Returns to M_0 on the window weights[first, first + count). Costs
    /// O(steps since the last restart + entries outside either window),
    /// and at most about a rebuild.
    void restart(std::size_t first, std::size_t count);

    /// Moves to M_{i+1} and returns delta_{i+1}. Throws Error(kExhausted)
    /// once the matching has ceil(s/2) edges.
    Weight step();

    std::span<const Weight> base() const noexcept { return w_; }
    std::size_t size() const noexcept { return size_; }
    std::size_t capacity() const noexcept { return max_matching_size(hi_ - lo_); }
    Weight weight() const noexcept { return weight_; }
    std::vector<std::size_t> selected() const;
    std::vector<Chain> chains() const;
    const Queue& queue() const noexcept { return queue_; }

private:
    bool interior(std::size_t left, std::size_t right) const noexcept { return left > lo_ && right + 1 < hi_; }
    bool starts_chain(std::size_t p) const noexcept { return slot_[p].end >= 0 && static_cast<std::size_t>(slot_[p].end) >= p; }
    bool ends_chain(std::size_t p) const noexcept { return slot_[p].end >= 0 && static_cast<std::size_t>(slot_[p].end) <= p; }
    void drop_empty(std::size_t pos);
    void detach_chain(std::size_t left, std::size_t right);
    void attach_chain(std::size_t left, std::size_t right, Weight key);

    std::span<const Weight> w_;
    std::size_t lo_ = 0;  // active window [lo_, hi_)
    std::size_t hi_ = 0;
    // Everything a step reads about a position, kept together.
    struct Slot {
        Weight w;
        // Augmentation key of the interior chain starting here: the weight
        // of its odd-stride neighbours minus its own. Only read at such starts.
        Weight chain_key;
        // For a chain [l, r]: slot_[l].end = r and slot_[r].end = l; -1 elsewhere.
        std::int32_t end;
    };
    std::vector<Slot> slot_;
    // Endpoints written since the last restart, unless there were too many
    // to be worth tracking.
    std::vector<std::size_t> attached_;
    bool attached_full_ = false;
    Queue queue_;
    std::size_t size_ = 0;
    Weight weight_ = 0;
};

extern template class MatchingState<OrderedQueue>;
extern template class MatchingState<BucketQueue>;

using TreeMatching = MatchingState<OrderedQueue>;
using BucketMatching = MatchingState<BucketQueue>;

/// Solves a sequence of instances. Instances that are windows of the same
/// buffer (as reduce() produces) share one state and only pay for their own
/// steps after the first.
class TreeSolver {
public:
    Weight operator()(const SubseqInstance& inst);

private:
    std::vector<std::pair<std::shared_ptr<const std::vector<Weight>>, TreeMatching>> states_;
};

class BucketSolver {
public:
    explicit BucketSolver(Weight key_bound);
    Weight operator()(const SubseqInstance& inst);

private:
    Weight key_bound_;
    std::vector<std::pair<std::shared_ptr<const std::vector<Weight>>, BucketMatching>> states_;
};

/// offset + optimal non-adjacent r-sum using the ordered backend; O(s log s).
Weight solve_tree(const SubseqInstance& inst);

/// Same value using the bucket backend; O(s + key_bound). key_bound must be
/// at least inst.total_weight().
Weight solve_bucket(const SubseqInstance& inst, Weight key_bound);

/// (delta_1, ..., delta_r); sums to solve_tree(inst) - inst.offset().
std::vector<Weight> delta_trace(const SubseqInstance& inst);
std::vector<Weight> delta_trace_bucket(const SubseqInstance& inst, Weight key_bound);

}  // namespace bdtw

#endif  // BDTW_MATCHING_HPP
