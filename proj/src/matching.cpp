#include "bdtw/matching.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <limits>
#include <tuple>
#include <stdexcept>
#include <string>

#include "bdtw/error.hpp"

namespace bdtw {

SubseqInstance::SubseqInstance(std::vector<Weight> weights, std::size_t r, Weight offset)
    : pool_(std::make_shared<const std::vector<Weight>>(std::move(weights))), weights_(*pool_), r_(r), offset_(offset) {
    validate();
}

SubseqInstance::SubseqInstance(std::shared_ptr<const std::vector<Weight>> pool, std::size_t first,
                               std::size_t count, std::size_t r, Weight offset)
    : pool_(std::move(pool)), r_(r), offset_(offset) {
    if (!pool_ || first > pool_->size() || count > pool_->size() - first) {
        throw std::invalid_argument("instance window lies outside the weight pool");
    }
    weights_ = std::span<const Weight>(*pool_).subspan(first, count);
    validate();
}

void SubseqInstance::validate() {
    if (r_ > max_matching_size(weights_.size())) {
        throw Error(ErrorCode::kInfeasible, "cannot select " + std::to_string(r_) +
                                                " non-adjacent entries out of " +
                                                std::to_string(weights_.size()));
    }
    if (offset_ < 0) throw std::invalid_argument("instance offset must be nonnegative");
    for (Weight w : weights_) {
        if (w < 1) throw std::invalid_argument("instance weights must be positive");
        if (w > std::numeric_limits<Weight>::max() - total_) {
            throw std::invalid_argument("instance total weight overflows 64 bits");
        }
        total_ += w;
    }
}

bool operator==(const SubseqInstance& a, const SubseqInstance& b) {
    return a.r_ == b.r_ && a.offset_ == b.offset_ && std::ranges::equal(a.weights_, b.weights_);
}

// ---------------------------------------------------------------------------
// OrderedQueue

void OrderedQueue::reset(std::span<const Weight> initial_keys) {
    if (initial_keys.size() >= static_cast<std::size_t>(kNone)) {
        throw Error(ErrorCode::kTooLarge, "too many candidates for the ordered backend");
    }
    log_.clear();
    log_full_ = false;
    dirty_.clear();
    positions_ = initial_keys.size();
    count_ = positions_;
    leaves_ = std::bit_ceil(std::max<std::size_t>(positions_, 1));
    tree_.assign(2 * leaves_, Entry{});
    for (std::size_t i = 0; i < positions_; ++i) {
        tree_[leaves_ + i] = {initial_keys[i], static_cast<std::int32_t>(i)};
    }
    for (std::size_t i = leaves_; i-- > 1;) tree_[i] = smallest_child(i);
}

void OrderedQueue::set_leaf(std::size_t pos, const Entry& e) {
    const std::size_t leaf = leaves_ + pos;
    tree_[leaf] = e;
    dirty_.push_back(leaf);
    // The lower ancestors are the ones that miss the cache; their addresses
    // are known now, so start fetching them before flush() walks up.
    for (std::size_t node = leaf >> 2; node > kCachedTop; node >>= 1) __builtin_prefetch(&tree_[node]);
}

void OrderedQueue::flush() {
    // Sorted nodes have sorted parents, so equal parents are adjacent. A node
    // that keeps its value stops its path: anything above that still needs
    // work is reached through another dirty node.
    std::sort(dirty_.begin(), dirty_.end());
    while (!dirty_.empty()) {
        std::size_t out = 0;
        for (std::size_t j = 0; j < dirty_.size(); ++j) {
            const std::size_t parent = dirty_[j] / 2;
            if (parent == 0) continue;
            if (out > 0 && dirty_[out - 1] == parent) continue;
            const Entry m = smallest_child(parent);
            if (m == tree_[parent]) continue;
            tree_[parent] = m;
            dirty_[out++] = parent;
        }
        dirty_.resize(out);
    }
}

void OrderedQueue::record(const Undo& u) {
    if (log_full_) return;
    if (log_.size() >= positions_ / 2) {
        log_full_ = true;
        log_.clear();
        return;
    }
    log_.push_back(u);
}

void OrderedQueue::insert(std::size_t pos, Weight key) {
    const Entry e{key, static_cast<std::int32_t>(pos)};
    set_leaf(pos, e);
    ++count_;
    record({true, e});
}

void OrderedQueue::erase(std::size_t pos) {
    record({false, tree_[leaves_ + pos]});
    set_leaf(pos, Entry{});
    --count_;
}

std::pair<std::size_t, Weight> OrderedQueue::pop_min() {
    flush();
    const Entry top = tree_[1];
    erase(static_cast<std::size_t>(top.pos));
    return {static_cast<std::size_t>(top.pos), top.key};
}

void OrderedQueue::rollback() {
    for (auto it = log_.rbegin(); it != log_.rend(); ++it) {
        const auto pos = static_cast<std::size_t>(it->entry.pos);
        if (it->inserted) {
            set_leaf(pos, Entry{});
            --count_;
        } else {
            set_leaf(pos, it->entry);
            ++count_;
        }
    }
    log_.clear();
}

// ---------------------------------------------------------------------------
// BucketQueue

namespace {
constexpr Weight kMaxBuckets = std::numeric_limits<std::int32_t>::max() - 1;
}

BucketQueue::BucketQueue(Weight key_bound) : bound_(key_bound), lowest_scanned_(key_bound + 1) {
    if (key_bound < 0 || key_bound > kMaxBuckets) {
        throw Error(ErrorCode::kTooLarge, "bucket key bound " + std::to_string(key_bound) + " out of range");
    }
}

void BucketQueue::reset(std::span<const Weight> initial_keys) {
    if (initial_keys.size() > static_cast<std::size_t>(kMaxBuckets)) {
        throw Error(ErrorCode::kTooLarge, "too many candidates for the bucket backend");
    }
    t_ = 1;
    lowest_scanned_ = bound_ + 1;
    count_ = 0;
    log_.clear();
    log_full_ = false;
    Weight top = 0;
    for (Weight k : initial_keys) top = std::max(top, k);
    if (top > bound_) {
        throw Error(ErrorCode::kKeyBoundExceeded,
                    "key " + std::to_string(top) + " exceeds bucket bound " + std::to_string(bound_));
    }
    head_.assign(static_cast<std::size_t>(top) + 1, -1);
    next_.resize(initial_keys.size());
    prev_.resize(initial_keys.size());
    key_.resize(initial_keys.size());
    // Reverse order so each bucket lists positions in increasing order.
    for (std::size_t i = initial_keys.size(); i-- > 0;) link(i, initial_keys[i]);
}

void BucketQueue::link(std::size_t pos, Weight key) {
    const auto p = static_cast<std::int32_t>(pos);
    auto& head = head_[static_cast<std::size_t>(key)];
    next_[pos] = head;
    prev_[pos] = -1;
    if (head >= 0) prev_[static_cast<std::size_t>(head)] = p;
    head = p;
    key_[pos] = static_cast<std::int32_t>(key);
    ++count_;
}

void BucketQueue::unlink(std::size_t pos) {
    const std::int32_t next = next_[pos];
    const std::int32_t prev = prev_[pos];
    if (prev >= 0) {
        next_[static_cast<std::size_t>(prev)] = next;
    } else {
        head_[static_cast<std::size_t>(key_[pos])] = next;
    }
    if (next >= 0) prev_[static_cast<std::size_t>(next)] = prev;
    key_[pos] = -1;
    --count_;
}

void BucketQueue::record(const Undo& u) {
    if (log_full_) return;
    if (log_.size() >= key_.size() / 2) {
        log_full_ = true;
        log_.clear();
        return;
    }
    log_.push_back(u);
}

void BucketQueue::insert(std::size_t pos, Weight key) {
    if (key > bound_) {
        throw Error(ErrorCode::kKeyBoundExceeded,
                    "key " + std::to_string(key) + " exceeds bucket bound " + std::to_string(bound_));
    }
    if (key < t_) throw std::logic_error("bucket key below the scan counter");
    const auto k = static_cast<std::size_t>(key);
    if (k >= head_.size()) {
        head_.resize(std::min(std::max(k + 1, 2 * head_.size()), static_cast<std::size_t>(bound_) + 1), -1);
    }
    link(pos, key);
    record({true, static_cast<std::int32_t>(pos), static_cast<std::int32_t>(key), -1, -1});
}

void BucketQueue::erase(std::size_t pos) {
    record({false, static_cast<std::int32_t>(pos), key_[pos], prev_[pos], next_[pos]});
    unlink(pos);
}

std::pair<std::size_t, Weight> BucketQueue::pop_min() {
    lowest_scanned_ = std::min(lowest_scanned_, t_);
    // count_ > 0, so a nonempty bucket lies below head_.size().
    while (head_[static_cast<std::size_t>(t_)] < 0) ++t_;
    const auto pos = static_cast<std::size_t>(head_[static_cast<std::size_t>(t_)]);
    erase(pos);
    return {pos, t_};
}

void BucketQueue::rollback() {
    // Undoing in reverse order finds every neighbour exactly as it was right
    // after the operation, so an erased node relinks between its old
    // neighbours and the bucket order is restored too.
    for (auto it = log_.rbegin(); it != log_.rend(); ++it) {
        const auto pos = static_cast<std::size_t>(it->pos);
        if (it->inserted) {
            unlink(pos);
            continue;
        }
        key_[pos] = it->key;
        prev_[pos] = it->prev;
        next_[pos] = it->next;
        if (it->prev >= 0) {
            next_[static_cast<std::size_t>(it->prev)] = it->pos;
        } else {
            head_[static_cast<std::size_t>(it->key)] = it->pos;
        }
        if (it->next >= 0) prev_[static_cast<std::size_t>(it->next)] = it->pos;
        ++count_;
    }
    log_.clear();
    t_ = 1;
    lowest_scanned_ = bound_ + 1;
}

// ---------------------------------------------------------------------------
// MatchingState

template <class Queue>
MatchingState<Queue>::MatchingState(std::span<const Weight> weights, Queue queue)
    : w_(weights), lo_(0), hi_(weights.size()), queue_(std::move(queue)) {
    if (weights.size() > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
        throw Error(ErrorCode::kTooLarge, "path of " + std::to_string(weights.size()) + " edges is too long");
    }
    slot_.resize(weights.size());
    for (std::size_t p = 0; p < weights.size(); ++p) slot_[p] = {weights[p], 0, -1};
    // M_0 is empty: every position holds an empty-chain candidate keyed by its weight.
    queue_.reset(weights);
}

template <class Queue>
void MatchingState<Queue>::restart(std::size_t first, std::size_t count) {
    if (first > w_.size() || count > w_.size() - first) {
        throw std::invalid_argument("window lies outside the weights");
    }
    if (queue_.can_rollback()) {
        queue_.rollback();
    } else {
        queue_.reset(w_);
    }
    if (attached_full_) {
        for (Slot& slot : slot_) slot.end = -1;
    } else {
        for (std::size_t p : attached_) slot_[p].end = -1;
    }
    attached_.clear();
    attached_full_ = false;
    size_ = 0;
    weight_ = 0;
    lo_ = first;
    hi_ = first + count;
    for (std::size_t p = 0; p < lo_; ++p) {
        if (queue_.contains(p)) queue_.erase(p);
    }
    for (std::size_t p = hi_; p < w_.size(); ++p) {
        if (queue_.contains(p)) queue_.erase(p);
    }
}

template <class Queue>
void MatchingState<Queue>::drop_empty(std::size_t pos) {
    if (pos < hi_ && queue_.contains(pos)) queue_.erase(pos);
}

template <class Queue>
void MatchingState<Queue>::detach_chain(std::size_t left, std::size_t right) {
    if (interior(left, right)) queue_.erase(left);
    slot_[left].end = -1;
    slot_[right].end = -1;
}

template <class Queue>
void MatchingState<Queue>::attach_chain(std::size_t left, std::size_t right, Weight key) {
    slot_[left].end = static_cast<std::int32_t>(right);
    slot_[right].end = static_cast<std::int32_t>(left);
    if (!attached_full_) {
        if (attached_.size() >= w_.size() / 2) {
            attached_full_ = true;
            attached_.clear();
        } else {
            attached_.push_back(left);
            attached_.push_back(right);
        }
    }
    if (interior(left, right)) {
        slot_[left].chain_key = key;
        queue_.insert(left, key);
    }
}

template <class Queue>
Weight MatchingState<Queue>::step() {
    if (size_ >= capacity() || queue_.empty()) {
        throw Error(ErrorCode::kExhausted, "matching already has the maximum " +
                                               std::to_string(capacity()) + " edges");
    }
    const auto [pos, key] = queue_.pop_min();

    // New keys are only meaningful, and only computed, for interior chains.
    std::size_t left = 0;
    std::size_t right = 0;
    Weight chain_key = 0;
    if (slot_[pos].end < 0) {
        // Empty chain at pos: select edge pos.
        left = right = pos;
        if (pos > lo_) drop_empty(pos - 1);
        drop_empty(pos + 1);
        if (interior(left, right)) chain_key = slot_[left - 1].w + slot_[right + 1].w - slot_[pos].w;
    } else {
        // Shift the chain one edge outward on each side: the old neighbours
        // become the chain and the old chain becomes neighbours. Its
        // candidate was just popped, so only the endpoint marks need clearing.
        const auto old_right = static_cast<std::size_t>(slot_[pos].end);
        slot_[pos].end = -1;
        slot_[old_right].end = -1;
        left = pos - 1;
        right = old_right + 1;
        if (left > lo_) drop_empty(left - 1);
        drop_empty(right + 1);
        if (interior(left, right)) chain_key = slot_[left - 1].w + slot_[right + 1].w - key;
    }

    // Absorb neighbouring chains that now sit at stride 2. The edge between
    // two merged chains was a neighbour of both.
    if (left >= lo_ + 2 && ends_chain(left - 2)) {
        const auto other_left = static_cast<std::size_t>(slot_[left - 2].end);
        detach_chain(other_left, left - 2);
        if (interior(other_left, right)) chain_key += slot_[other_left].chain_key - slot_[left - 1].w;
        left = other_left;
    }
    if (right + 2 < hi_ && starts_chain(right + 2)) {
        const auto other_right = static_cast<std::size_t>(slot_[right + 2].end);
        detach_chain(right + 2, other_right);
        if (interior(left, other_right)) chain_key += slot_[right + 2].chain_key - slot_[right + 1].w;
        right = other_right;
    }
    attach_chain(left, right, chain_key);

    ++size_;
    weight_ += key;
    return key;
}

template <class Queue>
std::vector<Chain> MatchingState<Queue>::chains() const {
    std::vector<Chain> out;
    for (std::size_t p = lo_; p < hi_; ++p) {
        if (starts_chain(p)) {
            const auto right = static_cast<std::size_t>(slot_[p].end);
            out.push_back({p - lo_, right - lo_});
            p = right;
        }
    }
    return out;
}

template <class Queue>
std::vector<std::size_t> MatchingState<Queue>::selected() const {
    std::vector<std::size_t> out;
    for (const Chain& c : chains()) {
        for (std::size_t p = c.left; p <= c.right; p += 2) out.push_back(p);
    }
    return out;
}

template class MatchingState<OrderedQueue>;
template class MatchingState<BucketQueue>;

// ---------------------------------------------------------------------------
// Solvers

namespace {

void check_feasible(const SubseqInstance& inst) {
    if (inst.r() > max_matching_size(inst.size())) {
        throw Error(ErrorCode::kInfeasible, "instance asks for more edges than the largest matching");
    }
}

template <class Queue>
std::vector<Weight> run_trace(const SubseqInstance& inst, Queue queue) {
    check_feasible(inst);
    std::vector<Weight> deltas;
    if (inst.r() == 0) return deltas;
    deltas.reserve(inst.r());
    MatchingState<Queue> state(inst.weights(), std::move(queue));
    while (deltas.size() < inst.r()) deltas.push_back(state.step());
    return deltas;
}

// Keeps at most two states alive: reduce() draws its windows from the run
// lengths of at most two series.
constexpr std::size_t kCachedStates = 2;

// Holding the pool keeps its address from being reused by another buffer.
template <class State, class MakeQueue>
Weight run_solve(const SubseqInstance& inst,
                 std::vector<std::pair<std::shared_ptr<const std::vector<Weight>>, State>>& states,
                 MakeQueue make_queue) {
    check_feasible(inst);
    if (inst.r() == 0) return inst.offset();
    auto it = std::find_if(states.begin(), states.end(), [&](const auto& entry) { return entry.first == inst.pool(); });
    if (it == states.end()) {
        if (states.size() == kCachedStates) states.erase(states.begin());
        states.emplace_back(std::piecewise_construct, std::forward_as_tuple(inst.pool()),
                            std::forward_as_tuple(inst.base(), make_queue()));
        it = std::prev(states.end());
    }
    State& state = it->second;
    state.restart(inst.first(), inst.size());
    while (state.size() < inst.r()) state.step();
    return inst.offset() + state.weight();
}

}  // namespace

Weight TreeSolver::operator()(const SubseqInstance& inst) {
    return run_solve(inst, states_, [] { return OrderedQueue{}; });
}

BucketSolver::BucketSolver(Weight key_bound) : key_bound_(key_bound) {}

Weight BucketSolver::operator()(const SubseqInstance& inst) {
    return run_solve(inst, states_, [this] { return BucketQueue(key_bound_); });
}

Weight solve_tree(const SubseqInstance& inst) { return TreeSolver{}(inst); }

Weight solve_bucket(const SubseqInstance& inst, Weight key_bound) { return BucketSolver(key_bound)(inst); }

std::vector<Weight> delta_trace(const SubseqInstance& inst) { return run_trace(inst, OrderedQueue{}); }

std::vector<Weight> delta_trace_bucket(const SubseqInstance& inst, Weight key_bound) {
    return run_trace(inst, BucketQueue(key_bound));
}

}  // namespace bdtw
