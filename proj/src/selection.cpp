#include "heapsel/selection.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <set>

#include "heapsel/errors.hpp"
#include "heapsel/workspace_units.hpp"

namespace heapsel {

namespace {

std::uint64_t ceil_log2(std::uint64_t n) {
    std::uint64_t r = 0;
    std::uint64_t v = 1;
    while (v < n) {
        v <<= 1;
        ++r;
    }
    return r;
}

struct ExtendCtx {
    RunConfig cfg;
    RunStats* stats;
    std::uint64_t n_top;
};

[[noreturn]] void invariant_failure(const std::string& what) {
    throw PreconditionViolated("extend invariant: " + what);
}

void require(bool ok, RunStats& st, const char* what) {
    ++st.assertion_checks;
    if (!ok) invariant_failure(what);
}

// The Extend round. Entry and exit at the scope root. The certified lower
// bound only ever moves up, the certified upper bound only down, and the
// target key stays strictly between them throughout; each iteration settles
// one sampled root for good.
Key extend_impl(ExplorationCursor& cur, std::uint64_t n, std::uint64_t k, Key l0, SplitRng& rng,
                ExtendCtx& ctx, std::uint64_t depth) {
    RunStats& st = *ctx.stats;
    ++st.extend_calls;
    st.max_recursion_depth = std::max(st.max_recursion_depth, depth);

    // The n = 1 target is the subtree root itself; calls that reach here
    // with k = 0 exist only for that target.
    if (n == 1) return cur.read();

    if (ctx.cfg.assertions) {
        require(depth <= ceil_log2(std::max<std::uint64_t>(ctx.n_top, 2)) + 1, st,
                "recursion deeper than log bound");
        require(2 * k >= n, st, "fewer than n/2 keys already certified");
        require(counting_dfs(cur, std::nullopt, l0, n) == k, st,
                "entry count below l0 does not equal k");
    }

    WorkspaceScope frame(cur.workspace(), units::kExtendFrame);

    Key lower = l0;                // largest certified good key
    std::optional<Key> upper;      // smallest certified bad key, none = +inf

    const std::uint64_t k_entry = k;
    std::uint64_t roots_at_entry = 0;
    std::uint64_t iterations = 0;
    std::uint64_t subcall_ordinal = 0;
    std::vector<Key> sampled_roots;              // assertion bookkeeping only
    std::vector<std::uint64_t> roots_seen;       // entry recording only

    while (k < n) {
        ++iterations;
        ++st.outer_iterations;

        RootsSample roots = sample_root(cur, l0, Bounds{lower, upper}, n, rng);
        if (!roots.chosen_key) {
            throw PreconditionViolated("extend: no active root although k < n");
        }
        const Key root_key = *roots.chosen_key;
        if (iterations == 1) roots_at_entry = roots.roots_remaining;
        if (ctx.cfg.record_extend_entries) roots_seen.push_back(roots.roots_remaining);
        if (ctx.cfg.assertions) {
            require(iterations <= roots_at_entry, st, "more iterations than entry roots");
            require(std::find(sampled_roots.begin(), sampled_roots.end(), root_key) ==
                        sampled_roots.end(),
                    st, "root sampled twice");
            sampled_roots.push_back(root_key);
        }

        Key working = std::max(lower, root_key);                              // candidate bound
        std::uint64_t global_count = counting_dfs(cur, std::nullopt, working, n);
        goto_root_child(cur, l0, root_key);

        std::optional<SubtreeScope> scope(std::in_place, cur);
        std::uint64_t found_here = counting_dfs(cur, root_key, working, n);
        std::uint64_t next_target =
            std::min(n - global_count + found_here, 2 * found_here);

        std::uint64_t prev_global = global_count;
        while (global_count < n) {
            if (ctx.cfg.assertions) {
                require(next_target > found_here, st, "subtree target not growing");
                require(next_target <= 2 * found_here, st, "subtree target above doubling cap");
                require(next_target <= n - global_count + found_here, st,
                        "subtree target overshoots outstanding keys");
                require(next_target < n, st, "subtree target must stay below n");
            }
            SplitRng sub_rng = rng.split(subcall_ordinal++, cur.path_fingerprint());
            working = extend_impl(cur, next_target, found_here, working, sub_rng, ctx, depth + 1);
            scope.reset();
            walk_to_scope_root(cur);
            global_count = counting_dfs(cur, std::nullopt, working, n);
            if (ctx.cfg.assertions) {
                require(global_count > prev_global, st, "global count stalled");
            }
            prev_global = global_count;
            found_here = next_target;
            next_target = std::min(n - global_count + found_here, 2 * found_here);
            if (global_count < n) {
                goto_value(cur, root_key, n);  // working is good here, so this is cheap
                scope.emplace(cur);
            }
        }
        if (scope) {
            scope.reset();
            walk_to_scope_root(cur);
        }

        GoodValuesStats gv;
        Bounds settled = good_values(cur, root_key, l0, working, n, rng, &gv);
        st.goodness_checks += gv.goodness_checks;
        if (settled.lower && *settled.lower > lower) lower = *settled.lower;
        if (settled.upper && (!upper || *settled.upper < *upper)) upper = *settled.upper;
        k = counting_dfs(cur, std::nullopt, lower, n);
    }

    if (ctx.cfg.record_extend_entries) {
        st.entries.push_back(ExtendEntryRecord{depth, n, k_entry, roots_at_entry, iterations,
                                               std::move(roots_seen)});
    }
    return lower;
}

}  // namespace

Key extend(ExplorationCursor& cur, std::uint64_t n, std::uint64_t k, Key l0, SplitRng& rng,
           const RunConfig& cfg, RunStats* stats) {
    if (n == 0) throw InvalidParam("extend needs n >= 1");
    RunStats local;
    ExtendCtx ctx{cfg, stats ? stats : &local, n};
    return extend_impl(cur, n, k, l0, rng, ctx, 1);
}

RunReport select(ExplorationCursor& cur, std::uint64_t n, std::uint64_t rng_seed,
                 const RunConfig& cfg, RunStats* stats) {
    if (n == 0) throw InvalidParam("select needs n >= 1");
    RunStats local;
    RunStats& st = stats ? *stats : local;

    {
        WorkspaceScope driver(cur.workspace(), units::kSelect);
        SplitRng rng(rng_seed);
        ExtendCtx ctx{cfg, &st, n};

        std::uint64_t k = 1;
        Key certified = cur.read();
        std::uint64_t round = 0;
        while (k < n) {
            const std::uint64_t next = (2 * k < n) ? 2 * k : n;
            SplitRng sub_rng = rng.split(round++, cur.path_fingerprint());
            certified = extend_impl(cur, next, k, certified, sub_rng, ctx, 1);
            k = next;
        }

        RunReport report;
        report.result = certified;
        report.seed = rng_seed;
        report.n = n;
        report.outer_iterations = st.outer_iterations;
        report.recursive_calls = st.extend_calls;
        report.travel = cur.travel().edges_traversed();
        report.peak_workspace = cur.workspace().peak_units();
        return report;
    }
}

namespace {

struct FrontierEntry {
    Key priority;  // the parent's key
    NodePath path;

    friend bool operator<(const FrontierEntry& a, const FrontierEntry& b) {
        if (a.priority != b.priority) return a.priority < b.priority;
        return a.path < b.path;
    }
};

// Walk along tree edges from the cursor's position to `target` (up to the
// common ancestor, then down).
void walk_to(ExplorationCursor& cur, const NodePath& target) {
    const NodePath& from = cur.position();
    std::size_t common = 0;
    while (common < from.depth() && common < target.depth() &&
           from.step_at(common) == target.step_at(common)) {
        ++common;
    }
    while (cur.depth() > common) cur.move_up();
    for (std::size_t i = common; i < target.depth(); ++i) cur.move(target.step_at(i));
}

}  // namespace

RunReport best_first_select(ExplorationCursor& cur, std::uint64_t n) {
    if (n == 0) throw InvalidParam("best_first_select needs n >= 1");

    WorkspaceScope fixed(cur.workspace(), units::kBestFirstFixed);
    // One declared unit per frontier entry and per kept key; this is the
    // linear-space half of the comparison.
    WorkspaceScope stored(cur.workspace(), 0);

    std::set<FrontierEntry> frontier;
    std::priority_queue<Key> kept;  // the n smallest revealed keys, max on top

    kept.push(cur.read());
    stored.grow(1);
    for (Step s : {Step::Left, Step::Right}) {
        frontier.insert(FrontierEntry{cur.read(), NodePath{}.child(s)});
        stored.grow(1);
    }

    for (;;) {
        const bool have_n = kept.size() >= n;
        if (have_n && frontier.begin()->priority >= kept.top()) break;
        FrontierEntry entry = *frontier.begin();
        frontier.erase(frontier.begin());
        stored.shrink(1);

        walk_to(cur, entry.path);
        const Key revealed = cur.read();

        if (kept.size() < n) {
            kept.push(revealed);
            stored.grow(1);
        } else if (revealed < kept.top()) {
            kept.pop();
            kept.push(revealed);
        }
        for (Step s : {Step::Left, Step::Right}) {
            frontier.insert(FrontierEntry{revealed, entry.path.child(s)});
            stored.grow(1);
        }
    }

    RunReport report;
    report.result = kept.top();
    report.n = n;
    report.travel = cur.travel().edges_traversed();
    report.peak_workspace = cur.workspace().peak_units();
    return report;
}

}  // namespace heapsel
