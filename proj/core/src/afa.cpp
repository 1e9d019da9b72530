#include "hydra/afa.hpp"

#include <algorithm>
#include <set>

namespace hydra {

std::uint32_t FlatSystem::add_var(std::string name) {
    if (name.empty()) throw ValidationError("variable name must be nonempty");
    if (index_of(name)) throw ValidationError("duplicate variable '" + name + "'");
    vars.push_back(std::move(name));
    rhs.emplace_back();
    return static_cast<std::uint32_t>(vars.size() - 1);
}

void FlatSystem::add_member_var(std::uint32_t var, std::string member_name) {
    if (var >= vars.size()) throw ValidationError("variable index out of range");
    rhs[var].member_vars.push_back(std::move(member_name));
}

void FlatSystem::add_member_constant(std::uint32_t var, HSet constant) {
    if (var >= vars.size()) throw ValidationError("variable index out of range");
    rhs[var].member_constants.push_back(constant);
}

std::optional<std::uint32_t> FlatSystem::index_of(std::string_view name) const {
    for (std::uint32_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return i;
    return std::nullopt;
}

namespace {

std::uint32_t resolve_var(const FlatSystem& sys, const std::string& name) {
    if (auto i = sys.index_of(name)) return *i;
    throw ValidationError("undeclared variable '" + name + "'");
}

}  // namespace

std::unordered_map<std::string, HSet> solve(Universe& u, const FlatSystem& sys) {
    const std::size_t k = sys.vars.size();

    // one node per variable, plus each distinct constant's canonical graph
    // spliced in once
    std::vector<std::vector<NodeId>> succ(k);
    std::unordered_map<HSetId, NodeId> constant_node;
    for (std::size_t v = 0; v < k; ++v) {
        for (const std::string& name : sys.rhs[v].member_vars)
            succ[v].push_back(resolve_var(sys, name));
        for (const HSet& c : sys.rhs[v].member_constants) {
            if (!c.valid() || &c.universe() != &u)
                throw UniverseMismatchError("system constant belongs to a different universe");
            auto it = constant_node.find(c.id());
            if (it == constant_node.end()) {
                const Apg& g = u.graph_of(c).graph;
                const NodeId offset = static_cast<NodeId>(succ.size());
                if (succ.size() + g.node_count() > u.limits().max_graph_nodes)
                    throw ResourceError("system graph exceeds the configured node bound");
                for (NodeId n = 0; n < g.node_count(); ++n) {
                    std::vector<NodeId> s;
                    s.reserve(g.successors(n).size());
                    for (NodeId w : g.successors(n)) s.push_back(offset + w);
                    succ.push_back(std::move(s));
                }
                it = constant_node.emplace(c.id(), offset + g.point()).first;
            }
            succ[v].push_back(it->second);
        }
    }

    std::unordered_map<std::string, HSet> solution;
    if (k == 0) return solution;
    const Apg graph = Apg::from_successor_sets(std::move(succ), 0);
    for (std::uint32_t v = 0; v < k; ++v)
        solution.emplace(sys.vars[v], u.intern(graph.repointed(v)));
    return solution;
}

bool check_colouring(const FlatSystem& sys,
                     const std::unordered_map<std::string, HSet>& assignment) {
    const Universe* u = nullptr;
    auto check_universe = [&u](const HSet& x) {
        if (!x.valid()) throw ValidationError("invalid hyperset handle in colouring");
        if (u == nullptr) u = &x.universe();
        else if (u != &x.universe())
            throw UniverseMismatchError("colouring mixes handles from different universes");
    };
    for (const auto& [name, value] : assignment) check_universe(value);
    for (const auto& r : sys.rhs)
        for (const HSet& c : r.member_constants) check_universe(c);

    for (std::size_t v = 0; v < sys.vars.size(); ++v) {
        const auto it = assignment.find(sys.vars[v]);
        if (it == assignment.end())
            throw ValidationError("assignment misses variable '" + sys.vars[v] + "'");

        std::set<HSetId> expected;
        for (const std::string& name : sys.rhs[v].member_vars) {
            resolve_var(sys, name);
            const auto mt = assignment.find(name);
            if (mt == assignment.end())
                throw ValidationError("assignment misses variable '" + name + "'");
            expected.insert(mt->second.id());
        }
        for (const HSet& c : sys.rhs[v].member_constants) expected.insert(c.id());

        std::set<HSetId> actual;
        for (const HSet& m : elements(it->second)) actual.insert(m.id());
        if (expected != actual) return false;
    }
    return true;
}

}  // namespace hydra
