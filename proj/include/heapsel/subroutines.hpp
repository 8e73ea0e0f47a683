#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "heapsel/bounds.hpp"
#include "heapsel/cursor.hpp"
#include "heapsel/mix.hpp"
#include "heapsel/node_path.hpp"

namespace heapsel {

// Building blocks for the selection algorithms. Every routine here starts
// and ends at the cursor's current subtree-scope root unless stated
// otherwise, and touches only nodes below it.

// How a depth-first scan reacts to a node it just stepped into.
enum class DfsAction { Descend, Skip, StopHere, Abort };

// Depth-first walk of the subtree strictly below the cursor's current node.
// `enter` is called once per node stepped into, while the cursor stands on
// it. Skip turns back; Abort unwinds to the start node; StopHere leaves the
// cursor in place and returns true. Backtracking uses only the cursor's
// local port information, no stored path.
template <typename Enter>
bool dfs_scan(ExplorationCursor& cur, Enter&& enter) {
    const std::size_t base = cur.depth();
    int next = 0;  // 0: try left, 1: try right, 2: node finished
    for (;;) {
        if (next < 2) {
            cur.move(next == 0 ? Step::Left : Step::Right);
            switch (enter(cur.read())) {
                case DfsAction::Descend:
                    next = 0;
                    break;
                case DfsAction::StopHere:
                    return true;
                case DfsAction::Abort:
                    while (cur.depth() > base) cur.move_up();
                    return false;
                case DfsAction::Skip: {
                    const int was = static_cast<int>(cur.last_step());
                    cur.move_up();
                    next = was + 1;
                    break;
                }
            }
        } else {
            if (cur.depth() == base) return false;
            const int was = static_cast<int>(cur.last_step());
            cur.move_up();
            next = was + 1;
        }
    }
}

// Number of keys <= cutoff in the subtree under the cursor, capped:
// returns min(count, cap + 1), turning back at every key above the cutoff
// and aborting as soon as the count exceeds the cap. Restores the cursor.
// When the caller knows the subtree root's key it can pass it as a cheap
// consistency check.
std::uint64_t counting_dfs(ExplorationCursor& cur, std::optional<Key> subtree_root_key,
                           Key cutoff, std::uint64_t cap);

// Re-finds a previously discovered key: bounded depth-first search that
// turns back above `target` and stops on it. Counts at most `cap` keys
// <= target before giving up. Throws TargetNotFound when the key is not
// in the searched region (a violated precondition, not a normal outcome).
void goto_value(ExplorationCursor& cur, Key target, std::uint64_t cap);

// Moves to the child-of-the-region root with key `root_key`: scans the
// region {key <= l0} and peeks its children. Unlike goto_value this stays
// cheap even when root_key itself is far above everything good.
void goto_root_child(ExplorationCursor& cur, Key l0, Key root_key);

// True iff the subtree under the cursor contains `key`. Restores position.
bool subtree_contains(ExplorationCursor& cur, Key key);

// Walks back up to the current scope root.
inline void walk_to_scope_root(ExplorationCursor& cur) {
    while (!cur.at_scope_root()) cur.move_up();
}

// Uniform pick from a stream of unknown length: the i-th offer replaces the
// held item with probability exactly 1/i. O(1) state.
template <typename T>
class StreamSampler {
public:
    explicit StreamSampler(SplitRng& rng) : rng_(&rng) {}

    void offer(const T& item) {
        ++seen_;
        if (rng_->below(seen_) == 0) item_ = item;
    }

    const std::optional<T>& item() const { return item_; }
    std::uint64_t seen() const { return seen_; }

private:
    SplitRng* rng_;
    std::uint64_t seen_ = 0;
    std::optional<T> item_;
};

// One enumerated-and-sampled pass over the active roots: the children of
// the region {key <= l0} whose subtrees still hold a key strictly inside
// `window`. The set is never materialized; a reservoir pick runs fused with
// the enumeration.
struct RootsSample {
    std::optional<NodePath> chosen_root;  // address, for observers and tests
    std::optional<Key> chosen_key;        // what the algorithms actually keep
    std::uint64_t roots_remaining = 0;
};

RootsSample sample_root(ExplorationCursor& cur, Key l0, const Bounds& window, std::uint64_t cap,
                        SplitRng& rng);

struct GoodValuesStats {
    std::uint64_t goodness_checks = 0;
    std::uint64_t window_passes = 0;
};

// Classifies S = {keys <= l_prime under the root-child with key root_key}
// against the selection target for `cap`: returns the largest good and the
// smallest bad value of S (absent lower = S has no good value, absent upper
// = S has no bad value). Repeatedly samples one key uniformly from the
// still-unclassified window and settles it with a whole-tree counting scan.
// Expects the caller's guarantee that at most 2*cap keys are <= l_prime.
Bounds good_values(ExplorationCursor& cur, Key root_key, Key l0, Key l_prime, std::uint64_t cap,
                   SplitRng& rng, GoodValuesStats* stats = nullptr);

}  // namespace heapsel
