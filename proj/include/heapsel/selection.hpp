#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heapsel/cursor.hpp"
#include "heapsel/mix.hpp"
#include "heapsel/subroutines.hpp"

namespace heapsel {

struct RunConfig {
    // Runtime invariant checks inside extend (entry counts, target bounds,
    // monotone progress, no root resampled, recursion depth). A firing check
    // throws PreconditionViolated; it means a bug, never a slow path.
    bool assertions = true;

    // Collect one ExtendEntryRecord per extend call (used by the
    // iteration-bound reports; off for plain runs).
    bool record_extend_entries = false;
};

struct ExtendEntryRecord {
    std::uint64_t depth = 0;  // 1 = called from select
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t roots_at_entry = 0;
    std::uint64_t iterations = 0;
    std::vector<std::uint64_t> roots_per_iteration;
};

struct RunStats {
    std::uint64_t outer_iterations = 0;
    std::uint64_t extend_calls = 0;
    std::uint64_t max_recursion_depth = 0;
    std::uint64_t goodness_checks = 0;
    std::uint64_t assertion_checks = 0;
    std::vector<ExtendEntryRecord> entries;
};

// Per-execution record. travel and peak_workspace are read off the cursor's
// meters at completion, so the harness hands each run a fresh cursor.
struct RunReport {
    Key result = 0;
    std::uint64_t travel = 0;
    std::uint64_t peak_workspace = 0;
    std::uint64_t outer_iterations = 0;
    std::uint64_t recursive_calls = 0;
    std::uint64_t seed = 0;
    std::string family;  // filled by the harness
    std::uint64_t n = 0;
};

// Finds the n-th smallest key. Cursor must stand at the root. Randomized;
// the whole run is reproducible from rng_seed.
RunReport select(ExplorationCursor& cur, std::uint64_t n, std::uint64_t rng_seed,
                 const RunConfig& cfg = {}, RunStats* stats = nullptr);

// One growth round: given that the k smallest keys of the subtree under the
// cursor are exactly those <= l0, certifies and returns the n-th smallest
// (k >= n/2). Exposed for direct testing; select drives it with the
// doubling schedule k = 1, 2, 4, ...
Key extend(ExplorationCursor& cur, std::uint64_t n, std::uint64_t k, Key l0, SplitRng& rng,
           const RunConfig& cfg = {}, RunStats* stats = nullptr);

// Baseline: repeatedly walk to the unexplored node whose parent holds the
// smallest key. Finds the same answer while storing the whole frontier;
// travel and space are the quantities the instrumented run exposes. Exempt
// from the logarithmic-space audit by design.
RunReport best_first_select(ExplorationCursor& cur, std::uint64_t n);

}  // namespace heapsel
