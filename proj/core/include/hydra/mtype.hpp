#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hydra/apg.hpp"

namespace hydra {

// A ranked alphabet: named operation symbols with finite arities.
class Signature {
public:
    static Signature make(std::vector<std::pair<std::string, std::uint32_t>> symbols);

    std::size_t symbol_count() const { return names_.size(); }
    std::string_view name(std::uint32_t symbol) const;
    std::uint32_t arity(std::uint32_t symbol) const;
    std::optional<std::uint32_t> index_of(std::string_view name) const;

private:
    std::vector<std::string> names_;
    std::vector<std::uint32_t> arities_;
};

// A finite coalgebra over a signature: each node carries a symbol and an
// ordered tuple of children whose length must equal the symbol's arity.
// Positions are meaningful; children are not a set.
struct LabelledApg {
    std::vector<std::uint32_t> labels;
    std::vector<std::vector<NodeId>> children;
    NodeId point = 0;

    static LabelledApg build(std::vector<std::uint32_t> labels,
                             std::vector<std::vector<NodeId>> children,
                             NodeId point);

    std::size_t node_count() const { return labels.size(); }
    void validate_against(const Signature& sig) const;

    bool operator==(const LabelledApg&) const = default;
};

struct CanonicalLabelledApg {
    LabelledApg graph;
    std::string encoding;

    bool operator==(const CanonicalLabelledApg&) const = default;
};

// Minimal representative of a labelled coalgebra: reachable restriction,
// quotient by labelled bisimilarity (labels equal, children matched
// positionwise), canonical reordering. Arities are assumed valid.
std::pair<CanonicalLabelledApg, NodeMap> minimize_labelled(const LabelledApg& g);

// Extends the plain graph encoding with one symbol index per node; children
// stay in position order.
std::string encode_labelled_graph(const LabelledApg& g);

using MTreeId = std::uint32_t;

class MUniverse;

// Handle to an interned rational tree over a signature.
class MTree {
public:
    MTree() = default;

    MTreeId id() const { return id_; }
    MUniverse& universe() const { return *universe_; }
    bool valid() const { return universe_ != nullptr; }

private:
    friend class MUniverse;
    MTree(MUniverse* u, MTreeId id) : universe_(u), id_(id) {}

    MUniverse* universe_ = nullptr;
    MTreeId id_ = 0;
};

// Intern store for the rational elements of the tree type over one
// signature. Trees from different universes must not be compared. Same
// concurrency contract as the hyperset Universe.
class MUniverse {
public:
    explicit MUniverse(Signature sig) : signature_(std::move(sig)) {}

    MUniverse(const MUniverse&) = delete;
    MUniverse& operator=(const MUniverse&) = delete;

    const Signature& signature() const { return signature_; }
    MTree intern(const LabelledApg& g);
    const CanonicalLabelledApg& graph_of(const MTree& t) const;
    std::size_t size() const;

private:
    Signature signature_;
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, MTreeId> by_encoding_;
    std::deque<CanonicalLabelledApg> graphs_;
};

// The unique tree a state of a finite coalgebra unfolds to.
MTree unfold(MUniverse& mu, const LabelledApg& c);

bool mtree_equals(const MTree& s, const MTree& t);

struct Observation {
    std::string symbol;
    std::vector<MTree> children;
};

// Root symbol and the trees its children unfold to, in position order.
Observation observe(const MTree& t);

// Finite prefix of a tree: nodes below the depth budget become cut markers.
struct TruncatedTree {
    bool cut = false;
    std::uint32_t symbol = 0;
    std::vector<TruncatedTree> children;

    bool operator==(const TruncatedTree&) const = default;
};

TruncatedTree truncate(const MTree& t, std::size_t depth);
std::string to_string(const TruncatedTree& t, const Signature& sig);

}  // namespace hydra
