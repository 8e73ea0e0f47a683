#include "heapsel/oracle.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "heapsel/errors.hpp"

namespace heapsel {

namespace {

struct HeapEntry {
    Key key;
    NodeState state;
    friend bool operator<(const HeapEntry& a, const HeapEntry& b) {
        return a.key > b.key;  // min-heap
    }
};

// Best-first frontier expansion with free access: the i-th pop is the i-th
// smallest key, because every node's ancestors pop before it does.
template <typename Visit>
void enumerate_ascending(const ValueSource& src, std::uint64_t limit, Visit&& visit) {
    std::priority_queue<HeapEntry> heap;
    NodeState root = src.root_state();
    heap.push({root.key, root});
    std::optional<Key> prev;
    for (std::uint64_t i = 0; i < limit; ++i) {
        HeapEntry top = heap.top();
        heap.pop();
        if (prev && *prev == top.key) {
            throw DuplicateKey("enumeration produced key " + std::to_string(top.key) + " twice");
        }
        prev = top.key;
        visit(top.key);
        for (Step s : {Step::Left, Step::Right}) {
            NodeState child = src.child_state(top.state, s, 0);
            heap.push({child.key, child});
        }
    }
}

struct PathWalker {
    const ValueSource& src;
    NodePath path;

    template <typename Enter>
    void walk(const NodeState& node, Enter&& enter) {
        for (Step s : {Step::Left, Step::Right}) {
            NodeState child = src.child_state(node, s, path.depth() + 1);
            path.push(s);
            if (enter(child, path)) walk(child, enter);
            path.pop();
        }
    }
};

NodeState state_at(const ValueSource& src, const NodePath& path) {
    NodeState st = src.root_state();
    for (std::size_t i = 0; i < path.depth(); ++i) {
        st = src.child_state(st, path.step_at(i), i + 1);
    }
    return st;
}

// Does the subtree rooted at `node` hold a key strictly inside `window`?
bool subtree_has_key_in(const ValueSource& src, const NodeState& node, const Bounds& window) {
    if (window.upper && node.key >= *window.upper) return false;  // all below are larger
    if (window.contains(node.key)) return true;
    bool found = false;
    PathWalker w{src, NodePath{}};
    w.walk(node, [&](const NodeState& child, const NodePath&) {
        if (found) return false;
        if (window.upper && child.key >= *window.upper) return false;
        if (window.contains(child.key)) {
            found = true;
            return false;
        }
        return true;  // child.key <= lower bound: keep descending
    });
    return found;
}

}  // namespace

Key oracle_select(const ValueSource& src, std::uint64_t n) {
    if (n == 0) throw InvalidParam("oracle_select needs n >= 1");
    Key last = 0;
    enumerate_ascending(src, n, [&](Key k) { last = k; });
    return last;
}

std::vector<Key> oracle_smallest(const ValueSource& src, std::uint64_t n) {
    std::vector<Key> out;
    out.reserve(n);
    enumerate_ascending(src, n, [&](Key k) { out.push_back(k); });
    return out;
}

std::uint64_t oracle_count_at_most(const ValueSource& src, Key cutoff, std::uint64_t cap) {
    std::priority_queue<HeapEntry> heap;
    NodeState root = src.root_state();
    heap.push({root.key, root});
    std::uint64_t count = 0;
    while (!heap.empty() && heap.top().key <= cutoff) {
        HeapEntry top = heap.top();
        heap.pop();
        if (++count > cap) return cap + 1;
        for (Step s : {Step::Left, Step::Right}) {
            NodeState child = src.child_state(top.state, s, 0);
            if (child.key <= cutoff) heap.push({child.key, child});
        }
    }
    return count;
}

std::optional<NodePath> oracle_locate(const ValueSource& src, Key key) {
    NodeState root = src.root_state();
    if (root.key == key) return NodePath{};
    if (root.key > key) return std::nullopt;
    std::optional<NodePath> found;
    PathWalker w{src, NodePath{}};
    w.walk(root, [&](const NodeState& child, const NodePath& path) {
        if (found) return false;
        if (child.key == key) {
            found = path;
            return false;
        }
        return child.key < key;
    });
    return found;
}

std::vector<std::pair<NodePath, Key>> oracle_nodes_at_most(const ValueSource& src, Key cutoff) {
    std::vector<std::pair<NodePath, Key>> out;
    NodeState root = src.root_state();
    if (root.key > cutoff) return out;
    out.emplace_back(NodePath{}, root.key);
    PathWalker w{src, NodePath{}};
    w.walk(root, [&](const NodeState& child, const NodePath& path) {
        if (child.key > cutoff) return false;
        out.emplace_back(path, child.key);
        return true;
    });
    return out;
}

std::vector<Key> oracle_subtree_keys_at_most(const ValueSource& src, const NodePath& root,
                                             Key cutoff) {
    std::vector<Key> out;
    NodeState base = state_at(src, root);
    if (base.key <= cutoff) out.push_back(base.key);
    // Padding sits far above every cutoff the tests use, so descending only
    // through keys <= cutoff terminates.
    PathWalker w{src, root};
    if (base.key <= cutoff) {
        w.walk(base, [&](const NodeState& child, const NodePath&) {
            if (child.key > cutoff) return false;
            out.push_back(child.key);
            return true;
        });
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<NodePath, Key>> oracle_active_roots(const ValueSource& src, Key l0,
                                                          const Bounds& window) {
    std::vector<std::pair<NodePath, Key>> out;
    NodeState root = src.root_state();
    if (root.key > l0) return out;  // no region, so no roots hang off it
    PathWalker w{src, NodePath{}};
    w.walk(root, [&](const NodeState& child, const NodePath& path) {
        if (child.key <= l0) return true;
        if (subtree_has_key_in(src, child, window)) out.emplace_back(path, child.key);
        return false;
    });
    return out;
}

}  // namespace heapsel
