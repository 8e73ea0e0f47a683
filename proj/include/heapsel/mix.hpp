#pragma once

#include <cstdint>

#include "heapsel/node_path.hpp"

namespace heapsel {

// The one keyed mixer used everywhere reproducibility matters: generator
// labels, padding keys, per-path fingerprints and the run RNG all go through
// mix64 (the splitmix64 finalizer). It is fixed here so that seeds recorded
// in CSV output replay identically on any platform. It is not cryptographic.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

namespace mixconst {
inline constexpr std::uint64_t kRootSalt = 0x9e3779b97f4a7c15ULL;
inline constexpr std::uint64_t kLeftSalt = 0xa0761d6478bd642fULL;
inline constexpr std::uint64_t kRightSalt = 0xe7037ed1a0b428dbULL;
inline constexpr std::uint64_t kLowBitsSalt = 0x8ebc6af09c88c6e3ULL;
inline constexpr std::uint64_t kSplitSalt = 0x589965cc75374cc3ULL;
inline constexpr std::uint64_t kStreamSalt = 0x1d8e4e27c47d124fULL;
}  // namespace mixconst

// Keyed fingerprint of a path, extensible one step at a time. Children of
// distinct parents or on distinct sides get unrelated fingerprints.
inline std::uint64_t fingerprint_root(std::uint64_t seed) {
    return mix64(seed ^ mixconst::kRootSalt);
}

inline std::uint64_t fingerprint_step(std::uint64_t parent_fp, Step s) {
    return mix64(parent_fp ^ (s == Step::Left ? mixconst::kLeftSalt : mixconst::kRightSalt));
}

inline std::uint64_t fingerprint(std::uint64_t seed, const NodePath& path) {
    std::uint64_t fp = fingerprint_root(seed);
    for (Step s : path.steps()) fp = fingerprint_step(fp, s);
    return fp;
}

// Counter-mode generator over mix64. split() derives an independent child
// stream from (ordinal, fingerprint), so recursive calls draw from their own
// streams and a run is bitwise reproducible from its single seed.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next() { return mix64(seed_ ^ mix64(++counter_ * mixconst::kStreamSalt)); }

    // Uniform in [0, k). Exact: rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t k) {
        const std::uint64_t reject = (0 - k) % k;  // 2^64 mod k
        for (;;) {
            std::uint64_t r = next();
            if (r >= reject) return r % k;
        }
    }

    SplitRng split(std::uint64_t ordinal, std::uint64_t fp) const {
        return SplitRng(mix64(seed_ ^ mix64(ordinal ^ mixconst::kSplitSalt) ^ fp));
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace heapsel
