#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hydra/bisim.hpp"

namespace hydra {

using HSetId = std::uint32_t;

// Resource bounds of a universe. Exceeding one raises ResourceError; nothing
// is ever truncated silently.
struct Limits {
    std::size_t max_graph_nodes = 1'000'000;
    std::size_t max_powerset_base = 20;
    std::size_t max_numeral = 4096;
    std::uint64_t max_exponential_count = 1'048'576;
};

class Universe;

// Handle to an interned hyperset. Cheap to copy; valid as long as its
// universe is alive. Two handles of one universe denote the same hyperset
// iff their ids are equal.
class HSet {
public:
    HSet() = default;

    HSetId id() const { return id_; }
    Universe& universe() const { return *universe_; }
    bool valid() const { return universe_ != nullptr; }

private:
    friend class Universe;
    HSet(Universe* u, HSetId id) : universe_(u), id_(id) {}

    Universe* universe_ = nullptr;
    HSetId id_ = 0;
};

// Append-only store of canonical minimal graphs keyed by their canonical
// encoding. Interning realizes the map from a graph to its hyperset: two
// graphs receive the same id exactly when they are bisimilar.
//
// Thread safety: any number of concurrent readers; interning is an atomic
// check-or-insert (first writer wins, later callers get the same id).
class Universe {
public:
    explicit Universe(Limits limits = {}) : limits_(limits) {}

    Universe(const Universe&) = delete;
    Universe& operator=(const Universe&) = delete;

    HSet intern(const Apg& g);
    HSet empty();

    const CanonicalApg& graph_of(const HSet& x) const;
    const std::string& encoding_of(const HSet& x) const;
    HSet handle(HSetId id);

    std::size_t size() const;
    const Limits& limits() const { return limits_; }

private:
    HSetId insert(CanonicalApg&& c);
    void check_handle(const HSet& x) const;

    Limits limits_;
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, HSetId> by_encoding_;
    std::deque<CanonicalApg> graphs_;
};

// Members of x, each interned, ordered by their canonical encodings.
std::vector<HSet> elements(const HSet& x);

// The set whose members are exactly the given handles (duplicates collapse).
HSet from_elements(Universe& u, const std::vector<HSet>& xs);

HSet pair(const HSet& x, const HSet& y);
HSet singleton(const HSet& x);
HSet union_of(const HSet& x);
HSet intersect(const HSet& x, const HSet& y);
HSet separation(const HSet& x, const std::function<bool(const HSet&)>& pred);
HSet replacement(const HSet& x, const std::function<HSet(const HSet&)>& f);

// x ∪ {x}
HSet succ(const HSet& x);

// von Neumann numeral; numeral(n) has exactly n members
HSet numeral(Universe& u, std::size_t n);

bool equals(const HSet& x, const HSet& y);
bool is_member(const HSet& x, const HSet& y);

// {{x},{x,y}} and its projections
HSet kuratowski_pair(const HSet& x, const HSet& y);
std::pair<HSet, HSet> kuratowski_decode(const HSet& p);

// The set of all graphs of functions from x to y, each a set of Kuratowski
// pairs; has |y|^|x| members.
HSet exponential(const HSet& x, const HSet& y);

// All subsets of x; 2^|x| members.
HSet powerset(const HSet& x);

}  // namespace hydra
