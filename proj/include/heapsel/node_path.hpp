#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "heapsel/errors.hpp"

namespace heapsel {

enum class Step : std::uint8_t { Left = 0, Right = 1 };

inline Step other(Step s) { return s == Step::Left ? Step::Right : Step::Left; }

// Address of a tree node: the left/right steps from the root. The root is
// the empty sequence. Two paths are the same node iff the step sequences
// are equal.
class NodePath {
public:
    NodePath() = default;
    explicit NodePath(std::vector<Step> steps) : steps_(std::move(steps)) {}

    static NodePath root() { return NodePath{}; }

    // Parses "-" (root) or a string over {L, R}, e.g. "LRL".
    static NodePath parse(const std::string& text) {
        if (text == "-") return NodePath{};
        std::vector<Step> steps;
        steps.reserve(text.size());
        for (char c : text) {
            if (c == 'L') {
                steps.push_back(Step::Left);
            } else if (c == 'R') {
                steps.push_back(Step::Right);
            } else {
                throw ParseError("invalid path character '" + std::string(1, c) + "' in \"" + text + "\"");
            }
        }
        return NodePath{std::move(steps)};
    }

    std::size_t depth() const { return steps_.size(); }
    bool is_root() const { return steps_.empty(); }

    Step step_at(std::size_t i) const { return steps_[i]; }
    Step last_step() const { return steps_.back(); }

    void push(Step s) { steps_.push_back(s); }
    void pop() { steps_.pop_back(); }

    NodePath child(Step s) const {
        NodePath p = *this;
        p.push(s);
        return p;
    }

    NodePath parent() const {
        if (is_root()) throw MoveUpAtRoot{};
        NodePath p = *this;
        p.pop();
        return p;
    }

    bool is_prefix_of(const NodePath& o) const {
        if (depth() > o.depth()) return false;
        for (std::size_t i = 0; i < depth(); ++i) {
            if (steps_[i] != o.steps_[i]) return false;
        }
        return true;
    }

    std::string to_string() const {
        if (steps_.empty()) return "-";
        std::string s;
        s.reserve(steps_.size());
        for (Step st : steps_) s.push_back(st == Step::Left ? 'L' : 'R');
        return s;
    }

    const std::vector<Step>& steps() const { return steps_; }

    friend bool operator==(const NodePath&, const NodePath&) = default;
    friend auto operator<=>(const NodePath& a, const NodePath& b) {
        return a.steps_ <=> b.steps_;
    }

private:
    std::vector<Step> steps_;
};

}  // namespace heapsel
