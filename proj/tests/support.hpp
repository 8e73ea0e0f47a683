#pragma once

#include <set>
#include <utility>

#include "heapsel/cursor.hpp"
#include "heapsel/generators.hpp"
#include "heapsel/value_source.hpp"

namespace heapsel::testing {

// A cursor together with the ledger it reports into.
struct Rig {
    explicit Rig(SourcePtr source) : cursor(std::move(source), ledger) {}

    WorkspaceLedger ledger;
    ExplorationCursor cursor;
};

inline void walk(ExplorationCursor& cur, const NodePath& path) {
    for (std::size_t i = 0; i < path.depth(); ++i) cur.move(path.step_at(i));
}

// Wraps a source and records which distinct nodes ever get evaluated;
// the travel-versus-visited tests use it as an exact visit counter.
class VisitCountingSource final : public ValueSource {
public:
    explicit VisitCountingSource(SourcePtr inner) : inner_(std::move(inner)) {}

    NodeState root_state() const override {
        visited_.insert(0);  // fingerprint of "the root slot"
        return inner_->root_state();
    }

    NodeState child_state(const NodeState& parent, Step step,
                          std::size_t child_depth) const override {
        NodeState st = inner_->child_state(parent, step, child_depth);
        visited_.insert(st.fp);
        return st;
    }

    std::string label() const override { return inner_->label(); }

    std::size_t distinct_visited() const { return visited_.size(); }
    void reset_visits() const { visited_.clear(); }

private:
    SourcePtr inner_;
    mutable std::set<std::uint64_t> visited_;
};

}  // namespace heapsel::testing
