#include "hydra/axioms.hpp"

#include <algorithm>
#include <set>

#include "hydra/bisim.hpp"

namespace hydra {

void GenConfig::validate() const {
    if (samples < 1) throw ValidationError("samples must be at least 1");
    if (max_nodes < 1) throw ValidationError("max_nodes must be at least 1");
    if (max_cycle_prob < 0.0 || max_cycle_prob > 1.0)
        throw ValidationError("max_cycle_prob must lie in [0, 1]");
}

std::uint64_t sample_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

double draw_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::set<HSetId> id_set(const std::vector<HSet>& xs) {
    std::set<HSetId> ids;
    for (const HSet& x : xs) ids.insert(x.id());
    return ids;
}

}  // namespace

Apg random_graph(std::mt19937_64& rng, std::uint32_t max_nodes, double cycle_prob) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(draw(rng, max_nodes));
    const bool cyclic = draw_unit(rng) < cycle_prob;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId v = 0; v < n; ++v) {
        const std::uint64_t degree = draw(rng, 4);
        for (std::uint64_t i = 0; i < degree; ++i) {
            if (cyclic) {
                edges.emplace_back(v, static_cast<NodeId>(draw(rng, n)));
            } else if (v + 1 < n) {
                edges.emplace_back(v, v + 1 + static_cast<NodeId>(draw(rng, n - v - 1)));
            }
        }
    }
    const NodeId point = static_cast<NodeId>(draw(rng, n));
    return Apg::build(n, edges, point);
}

HSet random_hset(Universe& u, const GenConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    return u.intern(random_graph(rng, cfg.max_nodes, cfg.max_cycle_prob));
}

FlatSystem random_system(Universe& u, const GenConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    const std::uint32_t k = 1 + static_cast<std::uint32_t>(draw(rng, cfg.max_nodes));
    FlatSystem sys;
    for (std::uint32_t v = 0; v < k; ++v) sys.add_var("v" + std::to_string(v));
    for (std::uint32_t v = 0; v < k; ++v) {
        const std::uint64_t member_count = draw(rng, 3);
        for (std::uint64_t i = 0; i < member_count; ++i)
            sys.add_member_var(v, "v" + std::to_string(draw(rng, k)));
        const std::uint64_t constant_count = draw(rng, 2);
        for (std::uint64_t i = 0; i < constant_count; ++i)
            sys.add_member_constant(v, u.intern(random_graph(rng, 4, cfg.max_cycle_prob)));
    }
    return sys;
}

std::string canonical_key(const Apg& g) { return minimize(g).first.encoding; }

bool extensionality_witness(const Apg& g1, const Apg& g2,
                            const std::function<std::string(const Apg&)>& key) {
    return (key(g1) == key(g2)) == bisimilar(g1, g2);
}

namespace {

using SampleCheck = std::function<void(Universe&, std::mt19937_64&, const GenConfig&)>;

struct SampleFailure {
    std::string message;
};

void fail(const std::string& message) { throw SampleFailure{message}; }

void require(bool ok, const std::string& message) {
    if (!ok) fail(message);
}

HSet draw_hset(Universe& u, std::mt19937_64& rng, const GenConfig& cfg) {
    return u.intern(random_graph(rng, cfg.max_nodes, cfg.max_cycle_prob));
}

void check_extensionality(Universe& u, std::mt19937_64& rng, const GenConfig& cfg) {
    const Apg g1 = random_graph(rng, cfg.max_nodes, cfg.max_cycle_prob);
    const Apg g2 = random_graph(rng, cfg.max_nodes, cfg.max_cycle_prob);
    const HSet a = u.intern(g1);
    const HSet b = u.intern(g2);
    require(extensionality_witness(g1, g2, canonical_key),
            "handle equality disagrees with bisimilarity");
    require(equals(a, b) == bisimilar(g1, g2),
            "interned ids disagree with bisimilarity");
    // same members, as ids, force the same set
    if (id_set(elements(a)) == id_set(elements(b)))
        require(equals(a, b), "sets with identical members differ");
}

void check_pairing(Universe& u, std::mt19937_64& rng, const GenConfig& cfg) {
    const HSet x = draw_hset(u, rng, cfg);
    const HSet y = draw_hset(u, rng, cfg);
    const HSet t = pair(x, y);
    for (const HSet& z : {x, y, draw_hset(u, rng, cfg)}) {
        const bool in = is_member(z, t);
        const bool should = equals(z, x) || equals(z, y);
        require(in == should, "membership in the pair disagrees with z=x or z=y");
    }
    const auto ids = id_set(elements(t));
    require(ids == id_set({x, y}), "pair has members beyond x and y");
}

void check_union(Universe& u, std::mt19937_64& rng, const GenConfig& cfg) {
    const HSet x = draw_hset(u, rng, cfg);
    const HSet t = union_of(x);
    std::set<HSetId> expected;
    for (const HSet& y : elements(x))
        for (const HSet& z : elements(y)) expected.insert(z.id());
    require(id_set(elements(t)) == expected,
            "members of the union differ from members-of-members");
}

void check_emptyset(Universe& u, std::mt19937_64& rng, const GenConfig& cfg) {
    const HSet e = u.empty();
    require(elements(e).empty(), "the empty set has a member");
    require(!is_member(draw_hset(u, rng, cfg), e), "something is a member of the empty set");
}

void check_intersection(Universe& u, std::mt19937_64& rng, const GenConfig& cfg) {
    const HSet a = draw_hset(u, rng, cfg);
    const HSet b = draw_hset(u, rng, cfg);
    const HSet t = intersect(a, b);
    std::set<HSetId> expected;
    const auto in_b = id_set(elements(b));
    for (const HSet& z : elements(a))
        if (in_b.count(z.id())) expected.insert(z.id());
    require(id_set(elements(t)) == expected, "intersection members are wrong");
}

void check_replacement(Universe& u, std::mt19937_64& rng, const GenConfig& cfg) {
    const HSet x = draw_hset(u, rng, cfg);
    const HSet omega_probe = u.empty();
    using Fn = std::function<HSet(const HSet&)>;
    const Fn menu[] = {
        [](const HSet& m) { return m; },
        [](const HSet& m) { return singleton(m); },
        [&](const HSet&) { return omega_probe; },
        [](const HSet& m) { return succ(m); },
    };
    const Fn& f = menu[draw(rng, 4)];
    const HSet t = replacement(x, f);
    std::set<HSetId> expected;
    for (const HSet& m : elements(x)) expected.insert(f(m).id());
    require(id_set(elements(t)) == expected, "replacement image members are wrong");
}

void check_separation(Universe& u, std::mt19937_64& rng, const GenConfig& cfg) {
    const HSet x = draw_hset(u, rng, cfg);
    using Pred = std::function<bool(const HSet&)>;
    const Pred menu[] = {
        [](const HSet&) { return false; },
        [](const HSet&) { return true; },
        [](const HSet& m) { return elements(m).empty(); },
        [](const HSet& m) { return m.universe().graph_of(m).graph.node_count() % 2 == 0; },
    };
    const Pred& pred = menu[draw(rng, 4)];
    const HSet t = separation(x, pred);
    std::set<HSetId> expected;
    for (const HSet& m : elements(x))
        if (pred(m)) expected.insert(m.id());
    require(id_set(elements(t)) == expected, "separation members are wrong");
    for (const HSet& z : elements(t))
        require(is_member(z, x), "separation produced a member outside x");
}

void check_infinity(Universe& u, std::mt19937_64& rng, const GenConfig&) {
    const std::size_t n = draw(rng, 12);
    const HSet k = numeral(u, n);
    const HSet k1 = numeral(u, n + 1);
    require(equals(succ(k), k1), "succ(numeral(n)) differs from numeral(n+1)");
    require(is_member(k, k1), "numeral(n) is not a member of numeral(n+1)");
    require(elements(k).size() == n, "numeral(n) does not have n members");
    require(is_member(u.empty(), k1), "0 is missing from a positive numeral");

    // bounded induction instance: psi(x) = "x is empty or contains 0" holds
    // at 0 and is preserved by succ, so it holds along the whole chain
    const auto psi = [&](const HSet& x) {
        return elements(x).empty() || is_member(u.empty(), x);
    };
    HSet it = u.empty();
    require(psi(it), "induction base fails");
    for (std::size_t i = 0; i <= n; ++i) {
        const HSet next = succ(it);
        require(!psi(it) || psi(next), "induction step fails");
        it = next;
    }
    require(psi(it), "induction conclusion fails at the bound");
}

void check_exponentiation(Universe& u, std::mt19937_64& rng, const GenConfig& cfg) {
    GenConfig small = cfg;
    small.max_nodes = 3;
    const HSet x = draw_hset(u, rng, small);
    const HSet y = draw_hset(u, rng, small);
    const std::vector<HSet> dom = elements(x);
    const std::vector<HSet> cod = elements(y);
    if (dom.size() > 3 || cod.size() > 3) return;  // keep instances small
    const HSet t = exponential(x, y);

    std::uint64_t expected_count = 1;
    for (std::size_t i = 0; i < dom.size(); ++i) expected_count *= cod.size();
    require(elements(t).size() == expected_count, "exponential has the wrong cardinality");

    for (const HSet& f : elements(t)) {
        // f must be a function graph from x to y
        std::set<HSetId> seen_args;
        for (const HSet& p : elements(f)) {
            auto [a, b] = kuratowski_decode(p);
            require(is_member(a, x), "function argument outside the domain");
            require(is_member(b, y), "function value outside the codomain");
            require(seen_args.insert(a.id()).second, "function is not single-valued");
        }
        require(seen_args.size() == dom.size(), "function does not cover the domain");
    }
}

void check_powerset(Universe& u, std::mt19937_64& rng, const GenConfig& cfg) {
    GenConfig small = cfg;
    small.max_nodes = std::min<std::uint32_t>(cfg.max_nodes, 6);
    const HSet x = draw_hset(u, rng, small);
    const std::vector<HSet> base = elements(x);
    if (base.size() > 6) return;
    const HSet t = powerset(x);
    require(elements(t).size() == (std::size_t{1} << base.size()),
            "powerset has the wrong cardinality");
    for (const HSet& w : elements(t))
        for (const HSet& z : elements(w))
            require(is_member(z, x), "a subset contains something outside x");
    // a random subset is present
    std::vector<HSet> sub;
    for (const HSet& m : base)
        if (draw(rng, 2)) sub.push_back(m);
    require(is_member(from_elements(u, sub), t), "a subset of x is missing from the powerset");
}

void check_afa(Universe& u, std::mt19937_64& rng, const GenConfig& cfg) {
    GenConfig sys_cfg = cfg;
    sys_cfg.seed = rng();
    const FlatSystem sys = random_system(u, sys_cfg);
    auto solution = solve(u, sys);
    require(check_colouring(sys, solution), "solve output fails its own equations");

    // uniqueness: any pointwise different assignment must be rejected
    auto perturbed = solution;
    const std::string& victim = sys.vars[draw(rng, sys.vars.size())];
    const HSet old = perturbed.at(victim);
    for (const HSet& candidate :
         {u.empty(), singleton(old), succ(old), pair(old, u.empty())}) {
        if (!equals(candidate, old)) {
            perturbed.at(victim) = candidate;
            break;
        }
    }
    require(!equals(perturbed.at(victim), old), "could not build a perturbed assignment");
    require(!check_colouring(sys, perturbed), "a perturbed colouring was accepted");
}

struct AxiomEntry {
    const char* name;
    SampleCheck check;
};

const std::vector<AxiomEntry>& axiom_table() {
    static const std::vector<AxiomEntry> table = {
        {"extensionality", check_extensionality},
        {"pairing", check_pairing},
        {"union", check_union},
        {"emptyset", check_emptyset},
        {"intersection", check_intersection},
        {"replacement", check_replacement},
        {"separation", check_separation},
        {"infinity", check_infinity},
        {"exp", check_exponentiation},
        {"powerset", check_powerset},
        {"afa", check_afa},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& supported_axioms() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : axiom_table()) out.emplace_back(e.name);
        return out;
    }();
    return names;
}

Report run_axiom_check(std::string_view axiom, Universe& u, const GenConfig& cfg) {
    cfg.validate();
    const SampleCheck* check = nullptr;
    for (const auto& e : axiom_table())
        if (axiom == e.name) check = &e.check;
    if (check == nullptr) {
        std::string names;
        for (const auto& e : axiom_table()) {
            if (!names.empty()) names += ", ";
            names += e.name;
        }
        throw ValidationError("unknown axiom '" + std::string(axiom) +
                              "'; supported: " + names);
    }

    Report report;
    report.axiom = std::string(axiom);
    const auto started = std::chrono::steady_clock::now();
    for (std::uint32_t i = 0; i < cfg.samples; ++i) {
        const std::uint64_t seed = sample_seed(cfg.seed, i);
        std::mt19937_64 rng(seed);
        ++report.samples_run;
        try {
            (*check)(u, rng, cfg);
        } catch (const SampleFailure& f) {
            report.failures.push_back({seed, f.message});
        } catch (const std::exception& e) {
            report.failures.push_back({seed, std::string("unexpected error: ") + e.what()});
        }
    }
    report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    return report;
}

}  // namespace hydra
