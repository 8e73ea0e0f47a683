#pragma once

#include <optional>

#include "heapsel/errors.hpp"
#include "heapsel/value_source.hpp"

namespace heapsel {

// Certified bracket around the selection target: `lower` is the largest key
// known to be good (nullopt = minus infinity), `upper` the smallest known to
// be bad (nullopt = plus infinity). Always lower < upper.
struct Bounds {
    std::optional<Key> lower;
    std::optional<Key> upper;

    static Bounds unbounded() { return Bounds{}; }

    bool contains(Key v) const {
        if (lower && v <= *lower) return false;
        if (upper && v >= *upper) return false;
        return true;
    }

    void check() const {
        if (lower && upper && !(*lower < *upper)) {
            throw PreconditionViolated("bounds out of order");
        }
    }
};

}  // namespace heapsel
