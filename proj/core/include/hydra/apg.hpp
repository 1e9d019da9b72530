#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "hydra/errors.hpp"

namespace hydra {

using NodeId = std::uint32_t;

// Renumbering witness between the nodes of a source graph and a destination
// graph. Partial: nodes dropped by an operation stay unmapped.
class NodeMap {
public:
    static constexpr NodeId unmapped = std::numeric_limits<NodeId>::max();

    NodeMap() = default;
    explicit NodeMap(std::size_t source_size) : to_(source_size, unmapped) {}

    static NodeMap identity(std::size_t n);

    std::size_t source_size() const { return to_.size(); }
    bool contains(NodeId v) const { return v < to_.size() && to_[v] != unmapped; }

    void set(NodeId from, NodeId to);
    NodeId at(NodeId v) const;

    bool operator==(const NodeMap&) const = default;

private:
    std::vector<NodeId> to_;
};

// A finite pointed graph: each node carries a finite set of successors and one
// node is distinguished. Successor sets are kept sorted and duplicate-free.
// Accessibility (every node reachable from the point) is not an invariant
// here; it is established by reachable_restriction.
class Apg {
public:
    Apg() : succ_(1), point_(0) {}  // single node, no edges

    static Apg build(std::size_t node_count,
                     const std::vector<std::pair<NodeId, NodeId>>& edges,
                     NodeId point);

    // Takes ownership of adjacency lists; sorts and deduplicates them.
    static Apg from_successor_sets(std::vector<std::vector<NodeId>> succ, NodeId point);

    std::size_t node_count() const { return succ_.size(); }
    NodeId point() const { return point_; }
    void set_point(NodeId p);
    Apg repointed(NodeId p) const;

    std::span<const NodeId> successors(NodeId v) const { return succ_[v]; }
    const std::vector<std::vector<NodeId>>& successor_sets() const { return succ_; }
    std::size_t edge_count() const;

    bool operator==(const Apg&) const = default;

private:
    std::vector<std::vector<NodeId>> succ_;
    NodeId point_;
};

// Restriction of g to the nodes reachable from its point, renumbered in
// breadth-first discovery order (the point becomes node 0). The map sends
// surviving old nodes to their new ids.
std::pair<Apg, NodeMap> reachable_restriction(const Apg& g);

// Coproduct of a nonempty family. Node sets are renumbered consecutively and
// each injection is returned; the result's point is node 0 of the first
// summand (no meaningful point exists before re-pointing).
std::pair<Apg, std::vector<NodeMap>> disjoint_union(const std::vector<Apg>& gs);

// For every node v of g, the subgraph generated by v: g re-pointed at v and
// restricted to what v reaches.
std::vector<std::pair<NodeId, Apg>> small_subcoalgebras(const Apg& g);

}  // namespace hydra
