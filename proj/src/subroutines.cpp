#include "heapsel/subroutines.hpp"

#include <string>

#include "heapsel/errors.hpp"
#include "heapsel/workspace.hpp"
#include "heapsel/workspace_units.hpp"

namespace heapsel {

namespace {

void expect_scope_root(const ExplorationCursor& cur, const char* who) {
    if (!cur.at_scope_root()) {
        throw PreconditionViolated(std::string(who) + " expects the cursor at its scope root");
    }
}

}  // namespace

std::uint64_t counting_dfs(ExplorationCursor& cur, std::optional<Key> subtree_root_key,
                           Key cutoff, std::uint64_t cap) {
    WorkspaceScope ws(cur.workspace(), units::kCountingDfs);
    if (subtree_root_key && *subtree_root_key != cur.read()) {
        throw PreconditionViolated("counting_dfs: cursor is not at the stated subtree root");
    }
    if (cur.read() > cutoff) return 0;
    std::uint64_t count = 1;
    if (count > cap) return count;
    dfs_scan(cur, [&](Key k) {
        if (k > cutoff) return DfsAction::Skip;
        ++count;
        return count > cap ? DfsAction::Abort : DfsAction::Descend;
    });
    return count;
}

void goto_value(ExplorationCursor& cur, Key target, std::uint64_t cap) {
    WorkspaceScope ws(cur.workspace(), units::kGotoValue);
    if (cur.read() == target) return;
    if (cur.read() > target) {
        throw TargetNotFound("goto_value: key " + std::to_string(target) +
                             " is below this subtree");
    }
    std::uint64_t count = 1;
    bool stopped = dfs_scan(cur, [&](Key k) {
        if (k == target) return DfsAction::StopHere;
        if (k > target) return DfsAction::Skip;
        ++count;
        return count > cap ? DfsAction::Abort : DfsAction::Descend;
    });
    if (!stopped) {
        throw TargetNotFound("goto_value: key " + std::to_string(target) +
                             (count > cap ? " not found within cap" : " not present"));
    }
}

void goto_root_child(ExplorationCursor& cur, Key l0, Key root_key) {
    WorkspaceScope ws(cur.workspace(), units::kGotoRoot);
    expect_scope_root(cur, "goto_root_child");
    if (cur.read() == root_key) return;  // the scope root doubles as the target
    bool stopped = dfs_scan(cur, [&](Key k) {
        if (k == root_key) return DfsAction::StopHere;
        return k <= l0 ? DfsAction::Descend : DfsAction::Skip;
    });
    if (!stopped) {
        throw TargetNotFound("goto_root_child: no child of the region <= " + std::to_string(l0) +
                             " has key " + std::to_string(root_key));
    }
}

bool subtree_contains(ExplorationCursor& cur, Key key) {
    WorkspaceScope ws(cur.workspace(), units::kSubtreeContains);
    if (cur.read() == key) return true;
    if (cur.read() > key) return false;
    bool found = false;
    dfs_scan(cur, [&](Key k) {
        if (k == key) {
            found = true;
            return DfsAction::Abort;
        }
        return k < key ? DfsAction::Descend : DfsAction::Skip;
    });
    return found;
}

namespace {

// Does the subtree under the cursor hold a key strictly inside the window?
// Restores the cursor. Travel proportional to the part of the subtree at or
// below window.lower, plus its fringe.
bool subtree_has_key_in(ExplorationCursor& cur, const Bounds& window) {
    const Key root_key = cur.read();
    if (window.upper && root_key >= *window.upper) return false;  // everything below is larger
    if (window.contains(root_key)) return true;
    bool found = false;
    dfs_scan(cur, [&](Key k) {
        if (window.upper && k >= *window.upper) return DfsAction::Skip;
        if (window.contains(k)) {
            found = true;
            return DfsAction::Abort;
        }
        return DfsAction::Descend;  // k at or below the lower end
    });
    return found;
}

}  // namespace

RootsSample sample_root(ExplorationCursor& cur, Key l0, const Bounds& window, std::uint64_t cap,
                        SplitRng& rng) {
    (void)cap;
    WorkspaceScope ws(cur.workspace(), units::kSampleRoot);
    expect_scope_root(cur, "sample_root");
    window.check();

    RootsSample out;
    if (cur.read() > l0) return out;  // empty region, no children to consider

    StreamSampler<Key> sampler(rng);
    std::optional<NodePath> chosen_path;  // observability only; not agent state
    dfs_scan(cur, [&](Key k) {
        if (k <= l0) return DfsAction::Descend;
        // k > l0: this node is a child of the region, i.e. a candidate root.
        if (subtree_has_key_in(cur, window)) {
            sampler.offer(k);
            if (sampler.item() && *sampler.item() == k) chosen_path = cur.position();
        }
        return DfsAction::Skip;
    });

    out.roots_remaining = sampler.seen();
    out.chosen_key = sampler.item();
    out.chosen_root = std::move(chosen_path);
    return out;
}

namespace {

// One streaming pass over {keys in the subtree strictly inside (lower,
// upper)}, reservoir-sampling a single key. Cursor starts and ends at the
// subtree root.
std::pair<std::optional<Key>, std::uint64_t> window_pass(ExplorationCursor& cur,
                                                         std::optional<Key> lower, Key upper,
                                                         SplitRng& rng) {
    WorkspaceScope ws(cur.workspace(), units::kWindowPass);
    StreamSampler<Key> sampler(rng);
    const Key root_key = cur.read();
    if (root_key >= upper) return {std::nullopt, 0};
    if (!lower || root_key > *lower) sampler.offer(root_key);
    dfs_scan(cur, [&](Key k) {
        if (k >= upper) return DfsAction::Skip;
        if (!lower || k > *lower) sampler.offer(k);
        return DfsAction::Descend;
    });
    return {sampler.item(), sampler.seen()};
}

}  // namespace

Bounds good_values(ExplorationCursor& cur, Key root_key, Key l0, Key l_prime, std::uint64_t cap,
                   SplitRng& rng, GoodValuesStats* stats) {
    WorkspaceScope ws(cur.workspace(), units::kGoodValues);
    expect_scope_root(cur, "good_values");

    GoodValuesStats local;
    GoodValuesStats& st = stats ? *stats : local;

    const auto is_good = [&](Key v) {
        ++st.goodness_checks;
        return counting_dfs(cur, std::nullopt, v, cap) <= cap;
    };

    std::optional<Key> certified_good;  // largest key certified good so far
    Key window_top = l_prime;
    bool top_certified_bad = false;

    for (;;) {
        goto_root_child(cur, l0, root_key);
        auto [candidate, window_size] = window_pass(cur, certified_good, window_top, rng);
        walk_to_scope_root(cur);
        ++st.window_passes;
        (void)window_size;
        if (!candidate) break;
        if (is_good(*candidate)) {
            certified_good = *candidate;
        } else {
            window_top = *candidate;
            top_certified_bad = true;
        }
    }

    if (top_certified_bad) {
        // window_top was sampled from the subtree, so it is min-bad of S.
        return Bounds{certified_good, window_top};
    }

    // No bad key was ever sampled: everything below l_prime in the subtree
    // is good, and the classification of l_prime itself is still open. It
    // may not even be a key of this subtree (the caller's working bound can
    // come from elsewhere), so settle membership and goodness directly.
    const bool ceiling_good = is_good(l_prime);
    goto_root_child(cur, l0, root_key);
    const bool ceiling_in_subtree = subtree_contains(cur, l_prime);
    walk_to_scope_root(cur);

    if (ceiling_good) {
        if (ceiling_in_subtree) return Bounds{l_prime, std::nullopt};
        return Bounds{certified_good, std::nullopt};
    }
    if (ceiling_in_subtree) return Bounds{certified_good, l_prime};
    return Bounds{certified_good, std::nullopt};
}

}  // namespace heapsel
