#pragma once

#include <cstdint>

namespace heapsel {

// Declared-unit inventory for the space audit. One unit is one live key or
// one machine-word counter held by the algorithm while the operation runs.
// The audit test (and the numbers in README.md) are tied to this table;
// change a routine's live variables and this table together.
namespace units {

// counting_scan: cutoff, cap, count, walk phase register
inline constexpr std::uint64_t kCountingDfs = 4;

// goto_value: target, cap, visited count, walk phase
inline constexpr std::uint64_t kGotoValue = 4;

// goto_root_child: region bound, target key, walk phase
inline constexpr std::uint64_t kGotoRoot = 3;

// subtree_contains: probe key, walk phase
inline constexpr std::uint64_t kSubtreeContains = 2;

// stream sampler: item seen-count + held item
inline constexpr std::uint64_t kStreamSampler = 2;

// window pass: sampler (2) + window ends (2) + walk phase
inline constexpr std::uint64_t kWindowPass = 5;

// sample_root: region bound, window ends (2), active count, held root key,
// outer walk phase, witness-scan phase
inline constexpr std::uint64_t kSampleRoot = 7;

// good_values: root key, region bound, ceiling key, certified ends (2),
// candidate, certified-bad flag, check counter
inline constexpr std::uint64_t kGoodValues = 8;

// one extend frame: n, k, entry bound, certified ends (2), sampled root key,
// working bound, global count, subtree counts (2), rng (seed+counter),
// iteration ordinal, previous global count
inline constexpr std::uint64_t kExtendFrame = 14;

// select driver: n, k, next target, certified bound, rng (2), seed echo
inline constexpr std::uint64_t kSelect = 7;

// best-first baseline fixed part: cursor bookkeeping + result registers;
// its frontier and kept-values grow one declared unit per stored entry.
inline constexpr std::uint64_t kBestFirstFixed = 6;

}  // namespace units

}  // namespace heapsel
