#include "hydra/bisim.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "hydra/detail/varint.hpp"

namespace hydra {

Partition Partition::trivial(std::size_t node_count) {
    Partition p;
    p.block_of.assign(node_count, 0);
    p.block_count = node_count > 0 ? 1 : 0;
    return p;
}

Partition Partition::discrete(std::size_t node_count) {
    Partition p;
    p.block_of.resize(node_count);
    for (std::size_t v = 0; v < node_count; ++v) p.block_of[v] = static_cast<BlockId>(v);
    p.block_count = static_cast<BlockId>(node_count);
    return p;
}

void Partition::validate(std::size_t node_count) const {
    if (block_of.size() != node_count)
        throw ValidationError("partition covers " + std::to_string(block_of.size()) +
                              " nodes, graph has " + std::to_string(node_count));
    std::vector<char> seen(block_count, 0);
    for (BlockId b : block_of) {
        if (b >= block_count) throw ValidationError("partition block id out of range");
        seen[b] = 1;
    }
    for (BlockId b = 0; b < block_count; ++b)
        if (!seen[b]) throw ValidationError("partition block " + std::to_string(b) + " is empty");
}

Partition Partition::normalized() const {
    Partition out;
    out.block_of.resize(block_of.size());
    std::vector<BlockId> rename(block_count, std::numeric_limits<BlockId>::max());
    BlockId next = 0;
    for (std::size_t v = 0; v < block_of.size(); ++v) {
        BlockId& r = rename[block_of[v]];
        if (r == std::numeric_limits<BlockId>::max()) r = next++;
        out.block_of[v] = r;
    }
    out.block_count = next;
    return out;
}

namespace {

// Set of successor blocks of v under p, sorted and deduplicated.
std::vector<BlockId> block_signature(const Apg& g, const std::vector<BlockId>& block_of, NodeId v) {
    std::vector<BlockId> sig;
    sig.reserve(g.successors(v).size());
    for (NodeId w : g.successors(v)) sig.push_back(block_of[w]);
    std::sort(sig.begin(), sig.end());
    sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
    return sig;
}

}  // namespace

Partition naive_largest_bisimulation(const Apg& g, const Partition& init) {
    init.validate(g.node_count());
    const std::size_t n = g.node_count();
    Partition p = init.normalized();
    for (;;) {
        std::map<std::pair<BlockId, std::vector<BlockId>>, BlockId> ids;
        Partition next;
        next.block_of.resize(n);
        for (NodeId v = 0; v < n; ++v) {
            auto key = std::make_pair(p.block_of[v], block_signature(g, p.block_of, v));
            auto [it, inserted] = ids.emplace(std::move(key), next.block_count);
            if (inserted) ++next.block_count;
            next.block_of[v] = it->second;
        }
        if (next.block_count == p.block_count) return p;
        // renumber by first occurrence so the fixpoint is normalized
        p = next.normalized();
    }
}

Partition refine_partition(const Apg& g, const Partition& init) {
    init.validate(g.node_count());
    const std::size_t n = g.node_count();
    const Partition start = init.normalized();

    std::vector<std::vector<NodeId>> preds(n);
    for (NodeId v = 0; v < n; ++v)
        for (NodeId w : g.successors(v)) preds[w].push_back(v);

    std::vector<BlockId> block_of = start.block_of;
    std::vector<std::vector<NodeId>> members(start.block_count);
    for (NodeId v = 0; v < n; ++v) members[block_of[v]].push_back(v);

    std::deque<BlockId> pending;
    std::vector<char> in_pending(start.block_count, 1);
    for (BlockId b = 0; b < start.block_count; ++b) pending.push_back(b);

    // per-pop scratch: which nodes have a successor in the splitter, bucketed
    // by their current block
    std::vector<std::uint32_t> mark(n, 0);
    std::uint32_t epoch = 0;
    std::vector<std::vector<NodeId>> bucket;
    bucket.resize(start.block_count);
    std::vector<BlockId> touched;

    auto push_pending = [&](BlockId b) {
        if (!in_pending[b]) {
            in_pending[b] = 1;
            pending.push_back(b);
        }
    };

    while (!pending.empty()) {
        const BlockId splitter = pending.front();
        pending.pop_front();
        in_pending[splitter] = 0;

        ++epoch;
        touched.clear();
        // splitter members may be reshuffled below if the splitter touches
        // itself, so walk a copy
        const std::vector<NodeId> splitter_members = members[splitter];
        for (NodeId v : splitter_members) {
            for (NodeId u : preds[v]) {
                if (mark[u] == epoch) continue;
                mark[u] = epoch;
                const BlockId c = block_of[u];
                if (bucket[c].empty()) touched.push_back(c);
                bucket[c].push_back(u);
            }
        }

        for (BlockId c : touched) {
            std::vector<NodeId> marked = std::move(bucket[c]);
            bucket[c].clear();
            if (marked.size() == members[c].size()) continue;  // stable wrt splitter

            // split c: unmarked members keep id c, marked members move to a
            // fresh block
            std::vector<NodeId> unmarked;
            unmarked.reserve(members[c].size() - marked.size());
            for (NodeId v : members[c])
                if (mark[v] != epoch) unmarked.push_back(v);

            const BlockId d = static_cast<BlockId>(members.size());
            for (NodeId v : marked) block_of[v] = d;
            members[c] = std::move(unmarked);
            members.push_back(std::move(marked));
            bucket.emplace_back();
            in_pending.push_back(0);

            // both halves need (re)certification; queue the smaller first
            const BlockId smaller = members[c].size() <= members[d].size() ? c : d;
            const BlockId larger = smaller == c ? d : c;
            push_pending(smaller);
            push_pending(larger);
        }
    }

    Partition result;
    result.block_of = std::move(block_of);
    result.block_count = static_cast<BlockId>(members.size());
    return result.normalized();
}

std::pair<Apg, NodeMap> quotient(const Apg& g, const Partition& p) {
    p.validate(g.node_count());
    std::vector<std::vector<BlockId>> block_sig(p.block_count);
    std::vector<char> sig_known(p.block_count, 0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto sig = block_signature(g, p.block_of, v);
        const BlockId b = p.block_of[v];
        if (!sig_known[b]) {
            block_sig[b] = std::move(sig);
            sig_known[b] = 1;
        } else if (block_sig[b] != sig) {
            throw ValidationError("partition is not stable: node " + std::to_string(v) +
                                  " disagrees with its block's successor blocks");
        }
    }
    std::vector<std::vector<NodeId>> succ(p.block_count);
    for (BlockId b = 0; b < p.block_count; ++b)
        succ[b].assign(block_sig[b].begin(), block_sig[b].end());
    Apg q = Apg::from_successor_sets(std::move(succ), p.block_of[g.point()]);
    NodeMap map(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) map.set(v, p.block_of[v]);
    return {std::move(q), std::move(map)};
}

std::string encode_graph(const Apg& g) {
    std::string out;
    detail::append_varint(out, g.node_count());
    detail::append_varint(out, g.point());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        detail::append_varint(out, g.successors(v).size());
        for (NodeId w : g.successors(v)) detail::append_varint(out, w);
    }
    return out;
}

std::vector<NodeId> canonical_order(const Apg& minimal) {
    const std::size_t n = minimal.node_count();
    std::vector<std::uint32_t> colour(n, 0);
    std::size_t colour_count = 1;
    while (colour_count < n) {
        // signature = own colour followed by the sorted successor colours
        std::vector<std::vector<std::uint32_t>> sig(n);
        for (NodeId v = 0; v < n; ++v) {
            auto& s = sig[v];
            s.reserve(minimal.successors(v).size() + 1);
            s.push_back(colour[v]);
            for (NodeId w : minimal.successors(v)) s.push_back(colour[w]);
            std::sort(s.begin() + 1, s.end());
        }
        std::vector<NodeId> order(n);
        for (NodeId v = 0; v < n; ++v) order[v] = v;
        std::sort(order.begin(), order.end(),
                  [&](NodeId a, NodeId b) { return sig[a] < sig[b]; });
        std::size_t next = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++next;
            colour[order[i]] = static_cast<std::uint32_t>(next);
        }
        if (next + 1 == colour_count)
            throw Error("canonical_order: colour refinement stalled; input graph is not minimal");
        colour_count = next + 1;
    }
    std::vector<NodeId> perm(n);
    for (NodeId v = 0; v < n; ++v) perm[v] = colour[v];
    return perm;
}

std::pair<CanonicalApg, NodeMap> minimize(const Apg& g) {
    auto [restricted, to_restricted] = reachable_restriction(g);
    Partition p = refine_partition(restricted, Partition::trivial(restricted.node_count()));
    auto [quot, to_quot] = quotient(restricted, p);
    const std::vector<NodeId> perm = canonical_order(quot);

    std::vector<std::vector<NodeId>> succ(quot.node_count());
    for (NodeId v = 0; v < quot.node_count(); ++v) {
        auto& s = succ[perm[v]];
        s.reserve(quot.successors(v).size());
        for (NodeId w : quot.successors(v)) s.push_back(perm[w]);
        std::sort(s.begin(), s.end());
    }
    Apg canonical = Apg::from_successor_sets(std::move(succ), perm[quot.point()]);

    NodeMap map(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (to_restricted.contains(v)) map.set(v, perm[to_quot.at(to_restricted.at(v))]);

    CanonicalApg out{std::move(canonical), {}};
    out.encoding = encode_graph(out.graph);
    return {std::move(out), std::move(map)};
}

bool bisimilar(const Apg& g1, const Apg& g2) {
    auto [u, injections] = disjoint_union({g1, g2});
    const Partition p = refine_partition(u, Partition::trivial(u.node_count()));
    return p.block_of[injections[0].at(g1.point())] == p.block_of[injections[1].at(g2.point())];
}

}  // namespace hydra
