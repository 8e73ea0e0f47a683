#include "heapsel/generators.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "heapsel/errors.hpp"

namespace heapsel {

namespace {

// Family-private tags stored in NodeState::tag.
enum Tag : std::uint32_t {
    kPlain = 0,    // random-increment nodes
    kRoot = 1,     // structured-family root
    kLeftChain = 2,
    kRightChain = 3,
    kPadding = 4,
    kExplicit = 5,
};

constexpr Key kKeyCeiling = Key{1} << 61;

}  // namespace

Key padded_child_key(Key parent_key, std::uint64_t child_fp) {
    if (parent_key > kKeyCeiling) {
        // Deep inside padding the usual increment would eventually overflow;
        // tiny increments keep the order strict instead.
        return parent_key + 1 + Key(child_fp & 0xffff);
    }
    return parent_key + kHuge + Key(child_fp & (std::uint64_t(kHuge) - 1));
}

// ---------------------------------------------------------------- FamilySpec

std::string FamilySpec::label() const {
    switch (family) {
        case Family::RandomIncrement:
            return "random-increment:" + std::to_string(seed);
        case Family::TwoPath:
            return "two-path";
        case Family::MedianGame:
            return "median-game:" + std::to_string(game_n) + ":" + std::to_string(seed);
        case Family::FromFile: {
            // basename keeps CSV fields short and comma-free
            auto pos = file.find_last_of('/');
            std::string base = pos == std::string::npos ? file : file.substr(pos + 1);
            return "from-file:" + base;
        }
    }
    return "?";
}

FamilySpec FamilySpec::parse(const std::string& token) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : token) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);

    auto to_u64 = [&](const std::string& s) -> std::uint64_t {
        try {
            std::size_t used = 0;
            std::uint64_t v = std::stoull(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw InvalidParam("bad numeric field '" + s + "' in family token '" + token + "'");
        }
    };

    FamilySpec spec;
    const std::string& name = parts[0];
    if (name == "random-increment") {
        spec.family = Family::RandomIncrement;
        if (parts.size() > 2) throw InvalidParam("random-increment takes at most one ':SEED'");
        if (parts.size() == 2) spec.seed = to_u64(parts[1]);
    } else if (name == "two-path") {
        if (parts.size() > 1) throw InvalidParam("two-path takes no parameters");
        spec.family = Family::TwoPath;
    } else if (name == "median-game") {
        spec.family = Family::MedianGame;
        if (parts.size() < 2 || parts.size() > 3)
            throw InvalidParam("median-game needs ':N' and optional ':SEED'");
        spec.game_n = to_u64(parts[1]);
        if (parts.size() == 3) spec.seed = to_u64(parts[2]);
    } else if (name == "from-file") {
        spec.family = Family::FromFile;
        if (parts.size() < 2 || parts[1].empty()) throw InvalidParam("from-file needs ':PATH'");
        std::string rest = token.substr(std::string("from-file:").size());
        // optional trailing ':SEED'; anything non-numeric stays part of the path
        if (auto colon = rest.find_last_of(':'); colon != std::string::npos) {
            const std::string tail = rest.substr(colon + 1);
            const bool numeric = !tail.empty() && std::all_of(tail.begin(), tail.end(), [](char c) {
                                     return c >= '0' && c <= '9';
                                 });
            if (numeric) {
                spec.seed = to_u64(tail);
                rest.resize(colon);
            }
        }
        spec.file = rest;
    } else {
        throw InvalidParam("unknown family '" + name + "'");
    }
    return spec;
}

SourcePtr make_source(const FamilySpec& spec) {
    switch (spec.family) {
        case Family::RandomIncrement:
            return std::make_shared<RandomIncrementSource>(spec.seed);
        case Family::TwoPath:
            return std::make_shared<TwoPathSource>();
        case Family::MedianGame:
            return std::make_shared<MedianGameSource>(spec.game_n, spec.seed);
        case Family::FromFile:
            return load_tree_file(spec.file, spec.seed);
    }
    throw InvalidParam("unknown family");
}

// ------------------------------------------------- RandomIncrementSource

RandomIncrementSource::RandomIncrementSource(std::uint64_t seed) : seed_(seed) {}

NodeState RandomIncrementSource::root_state() const {
    return NodeState{0, fingerprint_root(seed_), kPlain, 0};
}

NodeState RandomIncrementSource::child_state(const NodeState& parent, Step step,
                                             std::size_t /*child_depth*/) const {
    NodeState st;
    st.fp = fingerprint_step(parent.fp, step);
    st.tag = kPlain;
    // Keys are (sum of per-edge increments) << 21 | 21 fingerprint bits.
    // The increment dominates the low bits, so order along every path is
    // strict, and two unrelated nodes collide only if both the sums and the
    // 21-bit fingerprints coincide.
    const std::uint64_t delta = 1 + (st.fp & ((std::uint64_t(1) << 20) - 1));
    const std::uint64_t low = mix64(st.fp ^ mixconst::kLowBitsSalt) & ((std::uint64_t(1) << 21) - 1);
    const std::uint64_t parent_sum = std::uint64_t(parent.key) >> 21;
    st.key = Key(((parent_sum + delta) << 21) | low);
    return st;
}

std::string RandomIncrementSource::label() const {
    return "random-increment:" + std::to_string(seed_);
}

// --------------------------------------------------------- TwoPathSource

TwoPathSource::TwoPathSource() = default;

NodeState TwoPathSource::root_state() const {
    return NodeState{0, fingerprint_root(0x7077617468ULL), kRoot, 0};
}

NodeState TwoPathSource::child_state(const NodeState& parent, Step step,
                                     std::size_t /*child_depth*/) const {
    NodeState st;
    st.fp = fingerprint_step(parent.fp, step);
    if (parent.tag == kRoot) {
        if (step == Step::Left) {
            st.key = 1;
            st.tag = kLeftChain;
        } else {
            st.key = 2;
            st.tag = kRightChain;
        }
        return st;
    }
    if (parent.tag == kLeftChain && step == Step::Left) {
        st.key = parent.key + 2;
        st.tag = kLeftChain;
        return st;
    }
    if (parent.tag == kRightChain && step == Step::Right) {
        st.key = parent.key + 2;
        st.tag = kRightChain;
        return st;
    }
    st.key = padded_child_key(parent.key, st.fp);
    st.tag = kPadding;
    return st;
}

std::string TwoPathSource::label() const { return "two-path"; }

// ------------------------------------------------------ MedianGameSource

MedianGameSource::MedianGameSource(std::uint64_t n, std::uint64_t seed)
    : n_(n), seed_(seed) {
    if (n == 0) throw InvalidParam("median-game needs n >= 1");

    // Fixed M membership; only the S interleaving depends on the seed.
    for (std::uint64_t i = 1; i <= n; ++i) m_a_.push_back(Key(i));
    for (std::uint64_t i = n + 1; i <= 2 * n; ++i) m_b_.push_back(Key(i));

    // 2n+1 S values, split n+1 / n between the sides.
    std::vector<Key> pool;
    for (std::uint64_t i = 2 * n + 1; i <= 4 * n + 1; ++i) pool.push_back(Key(i));
    std::vector<std::uint8_t> side(pool.size(), 0);
    std::fill(side.begin() + (n + 1), side.end(), 1);
    SplitRng rng(mix64(seed ^ 0x6d656469616eULL));
    for (std::size_t i = side.size(); i > 1; --i) {
        std::swap(side[i - 1], side[rng.below(i)]);
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
        (side[i] == 0 ? s_a_ : s_b_).push_back(pool[i]);
    }

    left_chain_ = m_a_;
    left_chain_.insert(left_chain_.end(), s_a_.begin(), s_a_.end());
    right_chain_ = m_b_;
    right_chain_.insert(right_chain_.end(), s_b_.begin(), s_b_.end());

    // Median of S_A ∪ S_B = the (n+1)-th smallest of the 2n+1 S values.
    median_value_ = pool[n];
    std::uint64_t rank = 1;  // the root's key 0
    for (Key k : m_a_) rank += (k <= median_value_) ? 1 : 0;
    for (Key k : m_b_) rank += (k <= median_value_) ? 1 : 0;
    for (Key k : pool) rank += (k <= median_value_) ? 1 : 0;
    median_rank_ = rank;
}

std::vector<Key> MedianGameSource::all_real_keys() const {
    std::vector<Key> keys{0};
    keys.insert(keys.end(), m_a_.begin(), m_a_.end());
    keys.insert(keys.end(), m_b_.begin(), m_b_.end());
    keys.insert(keys.end(), s_a_.begin(), s_a_.end());
    keys.insert(keys.end(), s_b_.begin(), s_b_.end());
    std::sort(keys.begin(), keys.end());
    return keys;
}

NodeState MedianGameSource::root_state() const {
    return NodeState{0, fingerprint_root(seed_ ^ 0x67616d65ULL), kRoot, 0};
}

NodeState MedianGameSource::child_state(const NodeState& parent, Step step,
                                        std::size_t /*child_depth*/) const {
    NodeState st;
    st.fp = fingerprint_step(parent.fp, step);
    auto chain_next = [&](const std::vector<Key>& chain, std::uint64_t next_index,
                          std::uint32_t tag) {
        if (next_index < chain.size()) {
            st.key = chain[next_index];
            st.tag = tag;
            st.aux = next_index;
        } else {
            st.key = padded_child_key(parent.key, st.fp);
            st.tag = kPadding;
        }
    };
    if (parent.tag == kRoot) {
        if (step == Step::Left) {
            chain_next(left_chain_, 0, kLeftChain);
        } else {
            chain_next(right_chain_, 0, kRightChain);
        }
        return st;
    }
    if (parent.tag == kLeftChain && step == Step::Left) {
        chain_next(left_chain_, parent.aux + 1, kLeftChain);
        return st;
    }
    if (parent.tag == kRightChain && step == Step::Right) {
        chain_next(right_chain_, parent.aux + 1, kRightChain);
        return st;
    }
    st.key = padded_child_key(parent.key, st.fp);
    st.tag = kPadding;
    return st;
}

std::string MedianGameSource::label() const {
    return "median-game:" + std::to_string(n_) + ":" + std::to_string(seed_);
}

// -------------------------------------------------------- FromFileSource

NodeState FromFileSource::root_state() const {
    return NodeState{nodes_[0].key, fingerprint_root(seed_ ^ 0x66696c65ULL), kExplicit, 0};
}

NodeState FromFileSource::child_state(const NodeState& parent, Step step,
                                      std::size_t /*child_depth*/) const {
    NodeState st;
    st.fp = fingerprint_step(parent.fp, step);
    if (parent.tag == kExplicit) {
        std::int32_t child = nodes_[parent.aux].child[static_cast<int>(step)];
        if (child >= 0) {
            st.key = nodes_[child].key;
            st.tag = kExplicit;
            st.aux = std::uint64_t(child);
            return st;
        }
    }
    st.key = padded_child_key(parent.key, st.fp);
    st.tag = kPadding;
    return st;
}

std::string FromFileSource::label() const { return label_; }

SourcePtr load_tree(std::istream& in, std::string label, std::uint64_t seed) {
    auto src = std::make_shared<FromFileSource>();
    src->seed_ = seed;
    src->label_ = std::move(label);

    // path -> index, only for nodes already listed; parents must come first.
    struct Listed {
        NodePath path;
        std::int32_t index;
    };
    std::vector<Listed> listed;
    std::vector<Key> seen_keys;

    auto find_listed = [&](const NodePath& p) -> std::int32_t {
        for (const auto& l : listed) {
            if (l.path == p) return l.index;
        }
        return -1;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string path_text;
        if (!(ls >> path_text)) continue;  // blank or comment-only line

        auto fail = [&](const std::string& what) -> ParseError {
            return ParseError(src->label_ + ":" + std::to_string(lineno) + ": " + what);
        };

        Key key = 0;
        if (!(ls >> key)) throw fail("expected '<path> <key>'");
        std::string extra;
        if (ls >> extra) throw fail("trailing text '" + extra + "'");

        NodePath path;
        try {
            path = NodePath::parse(path_text);
        } catch (const ParseError& e) {
            throw fail(e.what());
        }

        if (find_listed(path) >= 0) throw fail("node " + path.to_string() + " listed twice");

        if (path.is_root()) {
            if (!src->nodes_.empty()) throw fail("root listed after other nodes");
            src->nodes_.push_back(FromFileSource::Node{key, {-1, -1}});
            listed.push_back({path, 0});
        } else {
            std::int32_t parent = find_listed(path.parent());
            if (parent < 0) throw fail("parent of " + path.to_string() + " not listed yet");
            Key parent_key = src->nodes_[parent].key;
            if (key <= parent_key) {
                if (key == parent_key)
                    throw DuplicateKey(src->label_ + ":" + std::to_string(lineno) + ": key " +
                                       std::to_string(key) + " equals its parent's");
                throw HeapViolation(src->label_ + ":" + std::to_string(lineno) + ": key " +
                                    std::to_string(key) + " not above parent key " +
                                    std::to_string(parent_key));
            }
            std::int32_t index = std::int32_t(src->nodes_.size());
            src->nodes_.push_back(FromFileSource::Node{key, {-1, -1}});
            src->nodes_[parent].child[static_cast<int>(path.last_step())] = index;
            listed.push_back({path, index});
        }

        for (Key k : seen_keys) {
            if (k == key)
                throw DuplicateKey(src->label_ + ":" + std::to_string(lineno) + ": key " +
                                   std::to_string(key) + " listed twice");
        }
        seen_keys.push_back(key);
    }

    if (src->nodes_.empty()) throw ParseError(src->label_ + ": no root node listed");
    return src;
}

SourcePtr load_tree_file(const std::string& path, std::uint64_t seed) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    return load_tree(in, path, seed);
}

}  // namespace heapsel
