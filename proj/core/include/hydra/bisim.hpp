#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hydra/apg.hpp"

namespace hydra {

using BlockId = std::uint32_t;

// A partition of a graph's nodes into blocks. Block ids always cover exactly
// the range [0, block_count).
struct Partition {
    std::vector<BlockId> block_of;
    BlockId block_count = 0;

    static Partition trivial(std::size_t node_count);   // one block
    static Partition discrete(std::size_t node_count);  // all singletons

    void validate(std::size_t node_count) const;

    // Renumbers blocks by first occurrence (scanning nodes 0, 1, ...); two
    // partitions of the same node set are equal as equivalence relations iff
    // their normalized forms compare equal.
    Partition normalized() const;

    bool operator==(const Partition&) const = default;
};

// Coarsest stable refinement of init: the fixpoint of splitting nodes by
// (current block, set of successor blocks). Reference implementation by
// whole-partition re-grouping per round; quadratic, used as the oracle.
Partition naive_largest_bisimulation(const Apg& g, const Partition& init);

// Same partition as naive_largest_bisimulation on every input, computed with
// worklist-driven splitter refinement (smaller halves are processed first).
Partition refine_partition(const Apg& g, const Partition& init);

// Collapses each block to one node. The partition must be stable for g (all
// members of a block share one set of successor blocks); this is verified.
std::pair<Apg, NodeMap> quotient(const Apg& g, const Partition& p);

// A minimal accessible graph in its canonical node order, together with the
// canonical byte encoding of its isomorphism class.
struct CanonicalApg {
    Apg graph;
    std::string encoding;

    bool operator==(const CanonicalApg&) const = default;
};

// Serializes a graph exactly as ordered: varint node count, varint point,
// then per node a varint-length-prefixed sorted successor list. This is the
// persistence and interning key; the byte format is stable.
std::string encode_graph(const Apg& g);

// Canonical node order of a minimal accessible graph, by iterated colour
// refinement: colour_0 = 0, colour_{k+1}(v) = rank of the signature
// (colour_k(v), sorted multiset of successor colours) in lexicographic
// order. On minimal input the final colours are pairwise distinct and give
// an isomorphism-invariant permutation (returned as old id -> new position).
std::vector<NodeId> canonical_order(const Apg& minimal);

// Restriction to the reachable part, quotient by the maximal bisimulation,
// then canonical reordering. The map sends reachable nodes of g to canonical
// nodes; unreachable nodes stay unmapped.
std::pair<CanonicalApg, NodeMap> minimize(const Apg& g);

inline const std::string& canonical_encoding(const CanonicalApg& c) { return c.encoding; }

// Whether the points of g1 and g2 are related by the maximal bisimulation on
// the disjoint union.
bool bisimilar(const Apg& g1, const Apg& g2);

}  // namespace hydra
