#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "heapsel/errors.hpp"
#include "heapsel/node_path.hpp"
#include "heapsel/value_source.hpp"
#include "heapsel/workspace.hpp"

namespace heapsel {

enum class Direction : std::uint8_t { Left = 0, Right = 1, Up = 2 };

// Counts edge traversals. This is the cost model: every move is one unit,
// reading the key at the current node is free. Monotone; only the harness
// resets it between runs.
class TravelMeter {
public:
    std::uint64_t edges_traversed() const { return edges_; }
    void reset() { edges_ = 0; }

private:
    friend class ExplorationCursor;
    void tick() { ++edges_; }

    std::uint64_t edges_ = 0;
};

// The agent. This is the only view of the tree that algorithm code gets:
// a position, three moves, and the key under the cursor. Keys are revealed
// strictly by travel.
//
// The cursor also knows which child of its parent the current node is
// (last_step), the standard local port information of graph-exploration
// agents; depth-first backtracking needs it and it costs no stored state on
// the algorithm side.
//
// A cursor can be confined to the subtree under its current node (see
// SubtreeScope); move_up at the confinement root fails the same way it does
// at the real root.
class ExplorationCursor {
public:
    ExplorationCursor(SourcePtr source, WorkspaceLedger& ledger)
        : source_(std::move(source)), ledger_(&ledger) {
        states_.reserve(64);
        states_.push_back(source_->root_state());
        scope_bases_.push_back(0);
    }

    Key read() const { return states_.back().key; }

    void move(Step step) {
        const NodeState& parent = states_.back();
        NodeState child = source_->child_state(parent, step, depth() + 1);
        if (child.key == parent.key) {
            throw DuplicateKey("child key equals parent key at " +
                               position_.child(step).to_string());
        }
        if (child.key < parent.key) {
            throw HeapViolation("child key below parent key at " +
                                position_.child(step).to_string());
        }
        states_.push_back(child);
        position_.push(step);
        travel_.tick();
    }

    void move_left() { move(Step::Left); }
    void move_right() { move(Step::Right); }

    void move_up() {
        if (depth() <= scope_bases_.back()) throw MoveUpAtRoot{};
        states_.pop_back();
        position_.pop();
        travel_.tick();
    }

    void move(Direction dir) {
        switch (dir) {
            case Direction::Left: move(Step::Left); return;
            case Direction::Right: move(Step::Right); return;
            case Direction::Up: move_up(); return;
        }
    }

    std::size_t depth() const { return states_.size() - 1; }

    // Which child of its parent the current node is. Errors at the root.
    Step last_step() const {
        if (position_.is_root()) throw MoveUpAtRoot{};
        return position_.last_step();
    }

    // Depth of the current confinement root (0 = the true root).
    std::size_t scope_base() const { return scope_bases_.back(); }
    bool at_scope_root() const { return depth() == scope_bases_.back(); }

    const NodePath& position() const { return position_; }
    std::uint64_t path_fingerprint() const { return states_.back().fp; }

    TravelMeter& travel() { return travel_; }
    const TravelMeter& travel() const { return travel_; }

    WorkspaceLedger& workspace() { return *ledger_; }

private:
    friend class SubtreeScope;

    SourcePtr source_;
    std::vector<NodeState> states_;  // root .. current
    NodePath position_;
    TravelMeter travel_;
    WorkspaceLedger* ledger_;
    std::vector<std::size_t> scope_bases_;
};

// Confines the cursor to the subtree rooted at its current node for the
// lifetime of the scope. Used when a subtree is handed to a subroutine as
// if it were a tree of its own.
class SubtreeScope {
public:
    explicit SubtreeScope(ExplorationCursor& cursor) : cursor_(&cursor) {
        cursor_->scope_bases_.push_back(cursor_->depth());
    }

    SubtreeScope(const SubtreeScope&) = delete;
    SubtreeScope& operator=(const SubtreeScope&) = delete;

    ~SubtreeScope() {
        assert(cursor_->depth() == cursor_->scope_bases_.back());
        cursor_->scope_bases_.pop_back();
    }

private:
    ExplorationCursor* cursor_;
};

}  // namespace heapsel
