#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "heapsel/bounds.hpp"
#include "heapsel/node_path.hpp"
#include "heapsel/value_source.hpp"

namespace heapsel {

// Privileged ground truth for tests and the verification harness: direct
// key_at access, no travel, no workspace accounting. Algorithm code never
// calls into here.

// n-th smallest key in the tree (n >= 1).
Key oracle_select(const ValueSource& src, std::uint64_t n);

// The n smallest keys, ascending. Throws DuplicateKey if the enumeration
// ever produces two equal keys.
std::vector<Key> oracle_smallest(const ValueSource& src, std::uint64_t n);

// min(|{v : key(v) <= cutoff}|, cap+1), i.e. the count a cap-limited scan
// would report.
std::uint64_t oracle_count_at_most(const ValueSource& src, Key cutoff, std::uint64_t cap);

// Path of the unique node with the given key, searching among nodes with
// key <= that value. nullopt when no such node exists.
std::optional<NodePath> oracle_locate(const ValueSource& src, Key key);

// All nodes with key <= cutoff, paths included, in depth-first order.
std::vector<std::pair<NodePath, Key>> oracle_nodes_at_most(const ValueSource& src, Key cutoff);

// Keys <= cutoff inside the subtree rooted at `root`, ascending.
std::vector<Key> oracle_subtree_keys_at_most(const ValueSource& src, const NodePath& root,
                                             Key cutoff);

// Children of nodes with key <= l0 that lie outside that region themselves,
// filtered to those whose subtree holds a key strictly inside `window`.
// Depth-first order.
std::vector<std::pair<NodePath, Key>> oracle_active_roots(const ValueSource& src, Key l0,
                                                          const Bounds& window);

}  // namespace heapsel
