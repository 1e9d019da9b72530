#include "hydra/apg.hpp"

#include <algorithm>
#include <deque>

namespace hydra {

namespace {

[[noreturn]] void throw_out_of_range(NodeId v, std::size_t node_count) {
    throw ValidationError("node " + std::to_string(v) + " out of range (graph has " +
                          std::to_string(node_count) + " nodes)");
}

void sort_dedup(std::vector<NodeId>& xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

}  // namespace

NodeMap NodeMap::identity(std::size_t n) {
    NodeMap m(n);
    for (NodeId v = 0; v < n; ++v) m.to_[v] = v;
    return m;
}

void NodeMap::set(NodeId from, NodeId to) {
    if (from >= to_.size()) throw ValidationError("NodeMap source node out of range");
    to_[from] = to;
}

NodeId NodeMap::at(NodeId v) const {
    if (!contains(v)) throw ValidationError("node " + std::to_string(v) + " is not mapped");
    return to_[v];
}

Apg Apg::build(std::size_t node_count,
               const std::vector<std::pair<NodeId, NodeId>>& edges,
               NodeId point) {
    if (node_count == 0) throw ValidationError("graph needs at least one node");
    if (point >= node_count) throw_out_of_range(point, node_count);
    std::vector<std::vector<NodeId>> succ(node_count);
    for (const auto& [from, to] : edges) {
        if (from >= node_count) throw_out_of_range(from, node_count);
        if (to >= node_count) throw_out_of_range(to, node_count);
        succ[from].push_back(to);
    }
    for (auto& s : succ) sort_dedup(s);
    Apg g;
    g.succ_ = std::move(succ);
    g.point_ = point;
    return g;
}

Apg Apg::from_successor_sets(std::vector<std::vector<NodeId>> succ, NodeId point) {
    const std::size_t n = succ.size();
    if (n == 0) throw ValidationError("graph needs at least one node");
    if (point >= n) throw_out_of_range(point, n);
    for (auto& s : succ) {
        for (NodeId v : s)
            if (v >= n) throw_out_of_range(v, n);
        sort_dedup(s);
    }
    Apg g;
    g.succ_ = std::move(succ);
    g.point_ = point;
    return g;
}

void Apg::set_point(NodeId p) {
    if (p >= succ_.size()) throw_out_of_range(p, succ_.size());
    point_ = p;
}

Apg Apg::repointed(NodeId p) const {
    Apg g = *this;
    g.set_point(p);
    return g;
}

std::size_t Apg::edge_count() const {
    std::size_t m = 0;
    for (const auto& s : succ_) m += s.size();
    return m;
}

std::pair<Apg, NodeMap> reachable_restriction(const Apg& g) {
    const std::size_t n = g.node_count();
    NodeMap map(n);
    std::vector<NodeId> order;
    order.reserve(n);
    std::deque<NodeId> queue;
    map.set(g.point(), 0);
    order.push_back(g.point());
    queue.push_back(g.point());
    while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop_front();
        for (NodeId w : g.successors(v)) {
            if (!map.contains(w)) {
                map.set(w, static_cast<NodeId>(order.size()));
                order.push_back(w);
                queue.push_back(w);
            }
        }
    }
    std::vector<std::vector<NodeId>> succ(order.size());
    for (NodeId new_id = 0; new_id < order.size(); ++new_id) {
        auto& s = succ[new_id];
        for (NodeId w : g.successors(order[new_id])) s.push_back(map.at(w));
        std::sort(s.begin(), s.end());
    }
    Apg restricted = Apg::from_successor_sets(std::move(succ), 0);
    return {std::move(restricted), std::move(map)};
}

std::pair<Apg, std::vector<NodeMap>> disjoint_union(const std::vector<Apg>& gs) {
    if (gs.empty()) throw ValidationError("disjoint_union of an empty family");
    std::size_t total = 0;
    for (const Apg& g : gs) total += g.node_count();
    std::vector<std::vector<NodeId>> succ;
    succ.reserve(total);
    std::vector<NodeMap> injections;
    injections.reserve(gs.size());
    NodeId offset = 0;
    for (const Apg& g : gs) {
        NodeMap inj(g.node_count());
        for (NodeId v = 0; v < g.node_count(); ++v) {
            inj.set(v, offset + v);
            std::vector<NodeId> s;
            s.reserve(g.successors(v).size());
            for (NodeId w : g.successors(v)) s.push_back(offset + w);
            succ.push_back(std::move(s));
        }
        injections.push_back(std::move(inj));
        offset += static_cast<NodeId>(g.node_count());
    }
    Apg u = Apg::from_successor_sets(std::move(succ), 0);
    return {std::move(u), std::move(injections)};
}

std::vector<std::pair<NodeId, Apg>> small_subcoalgebras(const Apg& g) {
    std::vector<std::pair<NodeId, Apg>> out;
    out.reserve(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto [sub, map] = reachable_restriction(g.repointed(v));
        out.emplace_back(v, std::move(sub));
    }
    return out;
}

}  // namespace hydra
