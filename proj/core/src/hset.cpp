#include "hydra/hset.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace hydra {

namespace {

void require_same_universe(const HSet& x, const HSet& y) {
    if (!x.valid() || !y.valid()) throw ValidationError("invalid hyperset handle");
    if (&x.universe() != &y.universe())
        throw UniverseMismatchError("handles belong to different universes");
}

void require_universe(const Universe& u, const HSet& x) {
    if (!x.valid()) throw ValidationError("invalid hyperset handle");
    if (&x.universe() != &u) throw UniverseMismatchError("handle belongs to a different universe");
}

std::vector<HSet> dedup_by_id(std::vector<HSet> xs) {
    std::sort(xs.begin(), xs.end(), [](const HSet& a, const HSet& b) { return a.id() < b.id(); });
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](const HSet& a, const HSet& b) { return a.id() == b.id(); }),
             xs.end());
    return xs;
}

}  // namespace

HSet Universe::intern(const Apg& g) {
    if (g.node_count() > limits_.max_graph_nodes)
        throw ResourceError("graph exceeds the configured node bound (" +
                            std::to_string(limits_.max_graph_nodes) + ")");
    auto [canonical, map] = minimize(g);
    return HSet(this, insert(std::move(canonical)));
}

HSet Universe::empty() { return intern(Apg()); }

HSetId Universe::insert(CanonicalApg&& c) {
    std::unique_lock lock(mutex_);
    if (auto it = by_encoding_.find(c.encoding); it != by_encoding_.end()) return it->second;
    const HSetId id = static_cast<HSetId>(graphs_.size());
    by_encoding_.emplace(c.encoding, id);
    graphs_.push_back(std::move(c));
    return id;
}

void Universe::check_handle(const HSet& x) const {
    if (!x.valid() || &x.universe() != this) throw ValidationError("invalid hyperset handle");
}

const CanonicalApg& Universe::graph_of(const HSet& x) const {
    check_handle(x);
    std::shared_lock lock(mutex_);
    return graphs_.at(x.id());  // deque: reference stays valid after appends
}

const std::string& Universe::encoding_of(const HSet& x) const { return graph_of(x).encoding; }

HSet Universe::handle(HSetId id) {
    std::shared_lock lock(mutex_);
    if (id >= graphs_.size()) throw ValidationError("unknown hyperset id");
    return HSet(this, id);
}

std::size_t Universe::size() const {
    std::shared_lock lock(mutex_);
    return graphs_.size();
}

std::vector<HSet> elements(const HSet& x) {
    if (!x.valid()) throw ValidationError("invalid hyperset handle");
    Universe& u = x.universe();
    // reference stays valid: the store is append-only
    const Apg& graph = u.graph_of(x).graph;
    std::vector<HSet> members;
    members.reserve(graph.successors(graph.point()).size());
    for (NodeId s : graph.successors(graph.point()))
        members.push_back(u.intern(graph.repointed(s)));
    std::sort(members.begin(), members.end(), [&](const HSet& a, const HSet& b) {
        return u.encoding_of(a) < u.encoding_of(b);
    });
    return members;
}

HSet from_elements(Universe& u, const std::vector<HSet>& xs) {
    for (const HSet& x : xs) require_universe(u, x);
    const std::vector<HSet> members = dedup_by_id(xs);

    std::size_t total = 1;
    for (const HSet& m : members) total += u.graph_of(m).graph.node_count();
    if (total > u.limits().max_graph_nodes)
        throw ResourceError("set construction exceeds the configured node bound");

    std::vector<std::vector<NodeId>> succ;
    succ.reserve(total);
    succ.emplace_back();  // node 0: the new set
    for (const HSet& m : members) {
        const Apg& g = u.graph_of(m).graph;
        const NodeId offset = static_cast<NodeId>(succ.size());
        succ[0].push_back(offset + g.point());
        for (NodeId v = 0; v < g.node_count(); ++v) {
            std::vector<NodeId> s;
            s.reserve(g.successors(v).size());
            for (NodeId w : g.successors(v)) s.push_back(offset + w);
            succ.push_back(std::move(s));
        }
    }
    return u.intern(Apg::from_successor_sets(std::move(succ), 0));
}

HSet pair(const HSet& x, const HSet& y) {
    require_same_universe(x, y);
    return from_elements(x.universe(), {x, y});
}

HSet singleton(const HSet& x) {
    if (!x.valid()) throw ValidationError("invalid hyperset handle");
    return from_elements(x.universe(), {x});
}

HSet union_of(const HSet& x) {
    std::vector<HSet> collected;
    for (const HSet& m : elements(x))
        for (const HSet& z : elements(m)) collected.push_back(z);
    return from_elements(x.universe(), collected);
}

HSet intersect(const HSet& x, const HSet& y) {
    require_same_universe(x, y);
    std::set<HSetId> in_y;
    for (const HSet& m : elements(y)) in_y.insert(m.id());
    std::vector<HSet> common;
    for (const HSet& m : elements(x))
        if (in_y.count(m.id())) common.push_back(m);
    return from_elements(x.universe(), common);
}

HSet separation(const HSet& x, const std::function<bool(const HSet&)>& pred) {
    std::vector<HSet> kept;
    for (const HSet& m : elements(x))
        if (pred(m)) kept.push_back(m);
    return from_elements(x.universe(), kept);
}

HSet replacement(const HSet& x, const std::function<HSet(const HSet&)>& f) {
    std::vector<HSet> image;
    for (const HSet& m : elements(x)) {
        HSet y = f(m);
        require_universe(x.universe(), y);
        image.push_back(y);
    }
    return from_elements(x.universe(), image);
}

HSet succ(const HSet& x) {
    std::vector<HSet> members = elements(x);
    members.push_back(x);
    return from_elements(x.universe(), members);
}

HSet numeral(Universe& u, std::size_t n) {
    if (n > u.limits().max_numeral)
        throw ResourceError("numeral " + std::to_string(n) + " exceeds the configured bound (" +
                            std::to_string(u.limits().max_numeral) + ")");
    HSet x = u.empty();
    for (std::size_t i = 0; i < n; ++i) x = succ(x);
    return x;
}

bool equals(const HSet& x, const HSet& y) {
    require_same_universe(x, y);
    return x.id() == y.id();
}

bool is_member(const HSet& x, const HSet& y) {
    require_same_universe(x, y);
    for (const HSet& m : elements(y))
        if (m.id() == x.id()) return true;
    return false;
}

HSet kuratowski_pair(const HSet& x, const HSet& y) {
    require_same_universe(x, y);
    return pair(singleton(x), pair(x, y));
}

std::pair<HSet, HSet> kuratowski_decode(const HSet& p) {
    const std::vector<HSet> outer = elements(p);
    if (outer.size() == 1) {
        const std::vector<HSet> inner = elements(outer[0]);
        if (inner.size() != 1) throw ValidationError("not a Kuratowski pair");
        return {inner[0], inner[0]};
    }
    if (outer.size() == 2) {
        std::vector<HSet> a = elements(outer[0]);
        std::vector<HSet> b = elements(outer[1]);
        if (a.size() > b.size()) std::swap(a, b);
        if (a.size() != 1 || b.size() != 2) throw ValidationError("not a Kuratowski pair");
        const HSet& first = a[0];
        const HSet& second = b[0].id() == first.id() ? b[1] : b[0];
        if (b[0].id() != first.id() && b[1].id() != first.id())
            throw ValidationError("not a Kuratowski pair");
        return {first, second};
    }
    throw ValidationError("not a Kuratowski pair");
}

HSet exponential(const HSet& x, const HSet& y) {
    require_same_universe(x, y);
    Universe& u = x.universe();
    const std::vector<HSet> domain = elements(x);
    const std::vector<HSet> codomain = elements(y);

    const std::uint64_t limit = u.limits().max_exponential_count;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        if (codomain.empty()) {
            count = 0;
            break;
        }
        if (count > limit / codomain.size())
            throw ResourceError("exponential exceeds the configured function-count bound");
        count *= static_cast<std::uint64_t>(codomain.size());
    }
    if (count == 0) return u.empty();  // no functions from a nonempty domain

    std::vector<HSet> functions;
    std::vector<std::size_t> choice(domain.size(), 0);
    for (std::uint64_t k = 0; k < count; ++k) {
        std::vector<HSet> graph_pairs;
        graph_pairs.reserve(domain.size());
        for (std::size_t i = 0; i < domain.size(); ++i)
            graph_pairs.push_back(kuratowski_pair(domain[i], codomain[choice[i]]));
        functions.push_back(from_elements(u, graph_pairs));
        for (std::size_t i = 0; i < choice.size(); ++i) {
            if (++choice[i] < codomain.size()) break;
            choice[i] = 0;
        }
    }
    return from_elements(u, functions);
}

HSet powerset(const HSet& x) {
    Universe& u = x.universe();
    const std::vector<HSet> base = elements(x);
    if (base.size() > u.limits().max_powerset_base)
        throw ResourceError("powerset base of " + std::to_string(base.size()) +
                            " exceeds the configured bound (" +
                            std::to_string(u.limits().max_powerset_base) + ")");
    std::vector<HSet> subsets;
    subsets.reserve(std::size_t{1} << base.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << base.size()); ++mask) {
        std::vector<HSet> members;
        for (std::size_t i = 0; i < base.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) members.push_back(base[i]);
        subsets.push_back(from_elements(u, members));
    }
    return from_elements(u, subsets);
}

}  // namespace hydra
