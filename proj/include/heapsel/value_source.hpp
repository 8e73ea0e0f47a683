#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "heapsel/mix.hpp"
#include "heapsel/node_path.hpp"

namespace heapsel {

// Keys are opaque ordered scalars. Algorithms compare and copy them, nothing
// else; no arithmetic on keys happens outside the generators.
using Key = std::int64_t;

// Per-node evaluation state. Sources derive a child's state from its
// parent's in O(1), which is what keeps cursor moves and the enumeration
// oracle cheap. `tag`/`aux` are family-private.
struct NodeState {
    Key key = 0;
    std::uint64_t fp = 0;
    std::uint32_t tag = 0;
    std::uint64_t aux = 0;
};

// The tree-label oracle: a deterministic map from node address to key,
// heap-ordered (child key strictly greater than parent key) with all keys
// distinct. Labels are fixed at construction; nothing observes the agent.
//
// Algorithm code never sees this interface. Only the harness, the
// generators, the privileged oracle and the tests touch it; algorithms go
// through ExplorationCursor.
class ValueSource {
public:
    virtual ~ValueSource() = default;

    virtual NodeState root_state() const = 0;
    virtual NodeState child_state(const NodeState& parent, Step step,
                                  std::size_t child_depth) const = 0;

    // Stable identity: family name plus parameters, e.g. "random-increment:7".
    virtual std::string label() const = 0;

    Key key_at(const NodePath& path) const {
        NodeState st = root_state();
        for (std::size_t i = 0; i < path.depth(); ++i) {
            st = child_state(st, path.step_at(i), i + 1);
        }
        return st.key;
    }
};

using SourcePtr = std::shared_ptr<const ValueSource>;

}  // namespace heapsel
