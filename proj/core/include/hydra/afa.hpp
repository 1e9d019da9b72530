#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hydra/hset.hpp"

namespace hydra {

// A flat system of set equations: each variable equals the set made of some
// of the variables and some constant hypersets. Member variables may be
// referenced before they are declared; solve validates the whole system.
struct FlatSystem {
    struct Rhs {
        std::vector<std::string> member_vars;
        std::vector<HSet> member_constants;
    };

    std::vector<std::string> vars;  // declaration order
    std::vector<Rhs> rhs;           // parallel to vars

    std::uint32_t add_var(std::string name);
    void add_member_var(std::uint32_t var, std::string member_name);
    void add_member_constant(std::uint32_t var, HSet constant);
    std::optional<std::uint32_t> index_of(std::string_view name) const;
};

// The unique assignment of hypersets to variables satisfying every equation:
// the members of sol(v) are exactly the solutions of v's member variables
// together with v's constants.
std::unordered_map<std::string, HSet> solve(Universe& u, const FlatSystem& sys);

// Whether an assignment satisfies every equation of the system.
bool check_colouring(const FlatSystem& sys,
                     const std::unordered_map<std::string, HSet>& assignment);

}  // namespace hydra
