#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "heapsel/value_source.hpp"

namespace heapsel {

// All finite test trees are embedded in the infinite model by the same
// padding rule: an unspecified child gets its parent's key plus kHuge plus
// a keyed hash mix, so padding never wins a selection for any realistic n
// and keys stay distinct.
inline constexpr Key kHuge = Key{1} << 40;

Key padded_child_key(Key parent_key, std::uint64_t child_fp);

enum class Family { RandomIncrement, TwoPath, MedianGame, FromFile };

// Identity of a generated tree. Equal specs build sources with identical
// key_at functions.
struct FamilySpec {
    Family family = Family::RandomIncrement;
    std::uint64_t seed = 0;
    std::uint64_t game_n = 8;  // MedianGame size parameter
    std::string file;          // FromFile path

    std::string label() const;

    // Parses "random-increment:SEED", "two-path", "median-game:N[:SEED]",
    // "from-file:PATH[:SEED]". Throws InvalidParam on unknown tokens.
    static FamilySpec parse(const std::string& token);

    static FamilySpec random_increment(std::uint64_t seed) {
        FamilySpec s;
        s.family = Family::RandomIncrement;
        s.seed = seed;
        return s;
    }
    static FamilySpec two_path() {
        FamilySpec s;
        s.family = Family::TwoPath;
        return s;
    }
    static FamilySpec median_game(std::uint64_t n, std::uint64_t seed) {
        FamilySpec s;
        s.family = Family::MedianGame;
        s.game_n = n;
        s.seed = seed;
        return s;
    }
    static FamilySpec from_file(std::string path, std::uint64_t seed = 0) {
        FamilySpec s;
        s.family = Family::FromFile;
        s.file = std::move(path);
        s.seed = seed;
        return s;
    }

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

SourcePtr make_source(const FamilySpec& spec);

// Generic well-behaved instance: key 0 at the root, every edge adds a
// pseudorandom increment in [1, 2^20]. The low 21 bits of each key carry a
// path fingerprint so that equal increment sums still give distinct keys.
class RandomIncrementSource final : public ValueSource {
public:
    explicit RandomIncrementSource(std::uint64_t seed);

    NodeState root_state() const override;
    NodeState child_state(const NodeState& parent, Step step,
                          std::size_t child_depth) const override;
    std::string label() const override;

private:
    std::uint64_t seed_;
};

// The bad instance for the best-first rule: two spines hanging off a root
// labeled 0, consecutively labeled with the odd (left) and even (right)
// integers, so consecutive values alternate sides through the root. The
// n-th smallest key is n-1. Off-spine children are padding.
class TwoPathSource final : public ValueSource {
public:
    TwoPathSource();

    NodeState root_state() const override;
    NodeState child_state(const NodeState& parent, Step step,
                          std::size_t child_depth) const override;
    std::string label() const override;
};

// Stress instance built from two value trails: the left chain carries n
// low values M_A then the n+1 values S_A, the right chain n low values M_B
// then the n values S_B, with every M value below every S value. Which S
// values sit on which side is a seed-dependent interleaving; M membership
// is fixed. Each chain node has one chain-continuing child and one padding
// child.
class MedianGameSource final : public ValueSource {
public:
    MedianGameSource(std::uint64_t n, std::uint64_t seed);

    NodeState root_state() const override;
    NodeState child_state(const NodeState& parent, Step step,
                          std::size_t child_depth) const override;
    std::string label() const override;

    const std::vector<Key>& m_a() const { return m_a_; }
    const std::vector<Key>& m_b() const { return m_b_; }
    const std::vector<Key>& s_a() const { return s_a_; }
    const std::vector<Key>& s_b() const { return s_b_; }

    // Median of S_A ∪ S_B and its rank among all non-padding keys, counted
    // from the built sets rather than assumed.
    Key median_value() const { return median_value_; }
    std::uint64_t median_rank() const { return median_rank_; }

    // All non-padding keys, ascending (root, M values, S values).
    std::vector<Key> all_real_keys() const;

private:
    std::uint64_t n_;
    std::uint64_t seed_;
    std::vector<Key> m_a_, m_b_, s_a_, s_b_;
    std::vector<Key> left_chain_, right_chain_;
    Key median_value_ = 0;
    std::uint64_t median_rank_ = 0;
};

// Explicit finite tree read from text, padded to infinity. One node per
// line, "<path> <key>", path "-" for the root or a string over {L,R};
// "#" starts a comment; parents must be listed before children.
class FromFileSource final : public ValueSource {
public:
    NodeState root_state() const override;
    NodeState child_state(const NodeState& parent, Step step,
                          std::size_t child_depth) const override;
    std::string label() const override;

    std::size_t listed_nodes() const { return nodes_.size(); }

private:
    friend SourcePtr load_tree(std::istream& in, std::string label, std::uint64_t seed);

    struct Node {
        Key key = 0;
        std::int32_t child[2] = {-1, -1};
    };

    std::vector<Node> nodes_;  // nodes_[0] is the root
    std::uint64_t seed_ = 0;
    std::string label_;
};

// Throws ParseError / HeapViolation / DuplicateKey with line context.
SourcePtr load_tree(std::istream& in, std::string label, std::uint64_t seed = 0);
SourcePtr load_tree_file(const std::string& path, std::uint64_t seed = 0);

}  // namespace heapsel
