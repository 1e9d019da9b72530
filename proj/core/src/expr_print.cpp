#include <unordered_map>
#include <unordered_set>

#include "hydra/expr.hpp"

namespace hydra::expr {

namespace {

class Printer {
public:
    explicit Printer(std::optional<std::size_t> depth) : depth_(depth) {}

    std::string print(const HSet& root) {
        find_cycle_entries(root);
        std::string out;
        emit(root, depth_, out);
        return out;
    }

private:
    const std::vector<HSet>& members_of(const HSet& x) {
        auto it = members_.find(x.id());
        if (it == members_.end()) it = members_.emplace(x.id(), elements(x)).first;
        return it->second;
    }

    // ids revisited while their own expansion is in progress get a binder
    void find_cycle_entries(const HSet& root) {
        enum : char { kUnvisited = 0, kInProgress = 1, kDone = 2 };
        std::unordered_map<HSetId, char> state;
        struct Frame {
            HSet set;
            std::size_t next = 0;
        };
        std::vector<Frame> stack{{root}};
        state[root.id()] = kInProgress;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& members = members_of(f.set);
            if (f.next < members.size()) {
                const HSet& m = members[f.next++];
                const char s = state[m.id()];
                if (s == kInProgress) {
                    cycle_entries_.insert(m.id());
                } else if (s == kUnvisited) {
                    state[m.id()] = kInProgress;
                    stack.push_back({m});
                }
            } else {
                state[f.set.id()] = kDone;
                stack.pop_back();
            }
        }
    }

    void emit(const HSet& x, std::optional<std::size_t> budget, std::string& out) {
        if (auto it = binder_names_.find(x.id()); it != binder_names_.end()) {
            out += it->second;
            return;
        }
        if (budget && *budget == 0) {
            out += "...";
            return;
        }
        if (cycle_entries_.count(x.id())) {
            const std::string name = "x" + std::to_string(binder_names_.size());
            binder_names_.emplace(x.id(), name);
            out += "\xCE\xBC";  // μ
            out += name;
            out += ".";
        }
        out += "{";
        const auto& members = members_of(x);
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (i > 0) out += ", ";
            emit(members[i], budget ? std::optional(*budget - 1) : std::nullopt, out);
        }
        out += "}";
    }

    std::optional<std::size_t> depth_;
    std::unordered_map<HSetId, std::vector<HSet>> members_;
    std::unordered_set<HSetId> cycle_entries_;
    std::unordered_map<HSetId, std::string> binder_names_;
};

}  // namespace

std::string print_canonical(const HSet& x, std::optional<std::size_t> depth) {
    if (!x.valid()) throw ValidationError("invalid hyperset handle");
    return Printer(depth).print(x);
}

}  // namespace hydra::expr
