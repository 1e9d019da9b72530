#include "hydra/mtype.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include <mutex>

#include "hydra/detail/varint.hpp"

namespace hydra {

Signature Signature::make(std::vector<std::pair<std::string, std::uint32_t>> symbols) {
    if (symbols.empty()) throw ValidationError("signature needs at least one symbol");
    Signature sig;
    for (auto& [name, arity] : symbols) {
        if (name.empty()) throw ValidationError("symbol name must be nonempty");
        if (sig.index_of(name)) throw ValidationError("duplicate symbol '" + name + "'");
        sig.names_.push_back(std::move(name));
        sig.arities_.push_back(arity);
    }
    return sig;
}

std::string_view Signature::name(std::uint32_t symbol) const {
    if (symbol >= names_.size()) throw ValidationError("symbol index out of range");
    return names_[symbol];
}

std::uint32_t Signature::arity(std::uint32_t symbol) const {
    if (symbol >= arities_.size()) throw ValidationError("symbol index out of range");
    return arities_[symbol];
}

std::optional<std::uint32_t> Signature::index_of(std::string_view name) const {
    for (std::uint32_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

LabelledApg LabelledApg::build(std::vector<std::uint32_t> labels,
                               std::vector<std::vector<NodeId>> children,
                               NodeId point) {
    if (labels.empty()) throw ValidationError("coalgebra needs at least one state");
    if (labels.size() != children.size())
        throw ValidationError("labels and children differ in length");
    const std::size_t n = labels.size();
    if (point >= n) throw ValidationError("point out of range");
    for (const auto& cs : children)
        for (NodeId c : cs)
            if (c >= n)
                throw ValidationError("child node " + std::to_string(c) + " out of range");
    LabelledApg g;
    g.labels = std::move(labels);
    g.children = std::move(children);
    g.point = point;
    return g;
}

void LabelledApg::validate_against(const Signature& sig) const {
    for (std::size_t v = 0; v < node_count(); ++v) {
        if (labels[v] >= sig.symbol_count())
            throw ValidationError("state " + std::to_string(v) + " carries an unknown symbol");
        if (children[v].size() != sig.arity(labels[v]))
            throw ValidationError("arity mismatch at state " + std::to_string(v) + ": symbol '" +
                                  std::string(sig.name(labels[v])) + "' expects " +
                                  std::to_string(sig.arity(labels[v])) + " children, got " +
                                  std::to_string(children[v].size()));
    }
}

namespace {

std::pair<LabelledApg, NodeMap> reachable_restriction_labelled(const LabelledApg& g) {
    NodeMap map(g.node_count());
    std::vector<NodeId> order;
    std::deque<NodeId> queue;
    map.set(g.point, 0);
    order.push_back(g.point);
    queue.push_back(g.point);
    while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop_front();
        for (NodeId w : g.children[v]) {
            if (!map.contains(w)) {
                map.set(w, static_cast<NodeId>(order.size()));
                order.push_back(w);
                queue.push_back(w);
            }
        }
    }
    LabelledApg out;
    out.labels.reserve(order.size());
    out.children.reserve(order.size());
    for (NodeId old : order) {
        out.labels.push_back(g.labels[old]);
        std::vector<NodeId> cs;
        cs.reserve(g.children[old].size());
        for (NodeId w : g.children[old]) cs.push_back(map.at(w));
        out.children.push_back(std::move(cs));
    }
    out.point = 0;
    return {std::move(out), std::move(map)};
}

// coarsest partition refining labels such that children blocks match
// positionwise; plain rounds of signature grouping
std::vector<std::uint32_t> labelled_bisimulation_blocks(const LabelledApg& g,
                                                        std::uint32_t& block_count) {
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> block(n);
    {
        std::map<std::uint32_t, std::uint32_t> by_label;
        block_count = 0;
        for (std::size_t v = 0; v < n; ++v) {
            auto [it, inserted] = by_label.emplace(g.labels[v], block_count);
            if (inserted) ++block_count;
            block[v] = it->second;
        }
    }
    for (;;) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
        std::vector<std::uint32_t> next(n);
        std::uint32_t count = 0;
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<std::uint32_t> sig;
            sig.reserve(g.children[v].size() + 1);
            sig.push_back(block[v]);
            for (NodeId w : g.children[v]) sig.push_back(block[w]);
            auto [it, inserted] = ids.emplace(std::move(sig), count);
            if (inserted) ++count;
            next[v] = it->second;
        }
        if (count == block_count) return block;
        block = std::move(next);
        block_count = count;
    }
}

// canonical order by colour refinement seeded with labels; children compared
// in position order
std::vector<NodeId> canonical_order_labelled(const LabelledApg& minimal) {
    const std::size_t n = minimal.node_count();
    std::vector<std::uint32_t> colour(n);
    std::size_t colour_count;
    {
        std::map<std::uint32_t, std::uint32_t> ranks;
        for (std::size_t v = 0; v < n; ++v) ranks.emplace(minimal.labels[v], 0);
        std::uint32_t r = 0;
        for (auto& [label, rank] : ranks) rank = r++;
        for (std::size_t v = 0; v < n; ++v) colour[v] = ranks[minimal.labels[v]];
        colour_count = ranks.size();
    }
    while (colour_count < n) {
        std::vector<std::vector<std::uint32_t>> sig(n);
        for (std::size_t v = 0; v < n; ++v) {
            auto& s = sig[v];
            s.reserve(minimal.children[v].size() + 1);
            s.push_back(colour[v]);
            for (NodeId w : minimal.children[v]) s.push_back(colour[w]);
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
            throw Error("canonical order: refinement stalled; labelled graph is not minimal");
        colour_count = next + 1;
    }
    std::vector<NodeId> perm(n);
    for (NodeId v = 0; v < n; ++v) perm[v] = colour[v];
    return perm;
}

}  // namespace

std::pair<CanonicalLabelledApg, NodeMap> minimize_labelled(const LabelledApg& g) {
    auto [restricted, to_restricted] = reachable_restriction_labelled(g);

    std::uint32_t block_count = 0;
    const std::vector<std::uint32_t> block =
        labelled_bisimulation_blocks(restricted, block_count);

    LabelledApg quot;
    quot.labels.assign(block_count, 0);
    quot.children.assign(block_count, {});
    std::vector<char> seen(block_count, 0);
    for (std::size_t v = 0; v < restricted.node_count(); ++v) {
        const std::uint32_t b = block[v];
        if (seen[b]) continue;
        seen[b] = 1;
        quot.labels[b] = restricted.labels[v];
        auto& cs = quot.children[b];
        cs.reserve(restricted.children[v].size());
        for (NodeId w : restricted.children[v]) cs.push_back(block[w]);
    }
    quot.point = block[restricted.point];

    const std::vector<NodeId> perm = canonical_order_labelled(quot);
    LabelledApg canonical;
    canonical.labels.assign(block_count, 0);
    canonical.children.assign(block_count, {});
    for (std::size_t v = 0; v < block_count; ++v) {
        canonical.labels[perm[v]] = quot.labels[v];
        auto& cs = canonical.children[perm[v]];
        cs.reserve(quot.children[v].size());
        for (NodeId w : quot.children[v]) cs.push_back(perm[w]);
    }
    canonical.point = perm[quot.point];

    NodeMap map(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (to_restricted.contains(v)) map.set(v, perm[block[to_restricted.at(v)]]);

    CanonicalLabelledApg out{std::move(canonical), {}};
    out.encoding = encode_labelled_graph(out.graph);
    return {std::move(out), std::move(map)};
}

std::string encode_labelled_graph(const LabelledApg& g) {
    std::string out;
    detail::append_varint(out, g.node_count());
    detail::append_varint(out, g.point);
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        detail::append_varint(out, g.labels[v]);
        detail::append_varint(out, g.children[v].size());
        for (NodeId w : g.children[v]) detail::append_varint(out, w);
    }
    return out;
}

MTree MUniverse::intern(const LabelledApg& g) {
    g.validate_against(signature_);
    auto [canonical, map] = minimize_labelled(g);
    std::unique_lock lock(mutex_);
    if (auto it = by_encoding_.find(canonical.encoding); it != by_encoding_.end())
        return MTree(this, it->second);
    const MTreeId id = static_cast<MTreeId>(graphs_.size());
    by_encoding_.emplace(canonical.encoding, id);
    graphs_.push_back(std::move(canonical));
    return MTree(this, id);
}

const CanonicalLabelledApg& MUniverse::graph_of(const MTree& t) const {
    if (!t.valid() || &t.universe() != this) throw ValidationError("invalid tree handle");
    std::shared_lock lock(mutex_);
    return graphs_.at(t.id());
}

std::size_t MUniverse::size() const {
    std::shared_lock lock(mutex_);
    return graphs_.size();
}

MTree unfold(MUniverse& mu, const LabelledApg& c) { return mu.intern(c); }

bool mtree_equals(const MTree& s, const MTree& t) {
    if (!s.valid() || !t.valid()) throw ValidationError("invalid tree handle");
    if (&s.universe() != &t.universe())
        throw UniverseMismatchError("trees over different signatures cannot be compared");
    return s.id() == t.id();
}

Observation observe(const MTree& t) {
    MUniverse& mu = t.universe();
    const LabelledApg& g = mu.graph_of(t).graph;
    Observation obs;
    obs.symbol = std::string(mu.signature().name(g.labels[g.point]));
    obs.children.reserve(g.children[g.point].size());
    for (NodeId w : g.children[g.point]) {
        LabelledApg re = g;
        re.point = w;
        obs.children.push_back(mu.intern(re));
    }
    return obs;
}

namespace {

TruncatedTree truncate_node(const LabelledApg& g, NodeId v, std::size_t depth) {
    if (depth == 0) return TruncatedTree{true, 0, {}};
    TruncatedTree t;
    t.symbol = g.labels[v];
    t.children.reserve(g.children[v].size());
    for (NodeId w : g.children[v]) t.children.push_back(truncate_node(g, w, depth - 1));
    return t;
}

}  // namespace

TruncatedTree truncate(const MTree& t, std::size_t depth) {
    const LabelledApg& g = t.universe().graph_of(t).graph;
    return truncate_node(g, g.point, depth);
}

std::string to_string(const TruncatedTree& t, const Signature& sig) {
    if (t.cut) return "...";
    std::string out(sig.name(t.symbol));
    if (!t.children.empty()) {
        out += "(";
        for (std::size_t i = 0; i < t.children.size(); ++i) {
            if (i > 0) out += ", ";
            out += to_string(t.children[i], sig);
        }
        out += ")";
    }
    return out;
}

}  // namespace hydra
