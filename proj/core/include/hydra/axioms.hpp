#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hydra/afa.hpp"
#include "hydra/hset.hpp"

namespace hydra {

// Configuration for randomized checks. Everything is deterministic given the
// seed; per-sample seeds are derived with sample_seed.
struct GenConfig {
    std::uint64_t seed = 0;
    std::uint32_t max_nodes = 8;
    double max_cycle_prob = 0.5;
    std::uint32_t samples = 100;

    void validate() const;
};

struct CheckFailure {
    std::uint64_t seed = 0;
    std::string message;
};

struct Report {
    std::string axiom;
    std::uint32_t samples_run = 0;
    std::vector<CheckFailure> failures;
    std::chrono::milliseconds elapsed{0};

    bool passed() const { return failures.empty(); }
};

// Derived per-sample seed (splitmix64 of base and index).
std::uint64_t sample_seed(std::uint64_t base, std::uint64_t index);

// Random graph: up to max_nodes nodes, small out-degrees, edges restricted to
// higher-numbered targets unless a cycle draw (at probability cycle_prob)
// allows arbitrary targets.
Apg random_graph(std::mt19937_64& rng, std::uint32_t max_nodes, double cycle_prob);

// Interned hyperset of a random graph; deterministic per cfg.seed.
HSet random_hset(Universe& u, const GenConfig& cfg);

// Random flat system with up to max_nodes variables; deterministic per seed.
FlatSystem random_system(Universe& u, const GenConfig& cfg);

// Evaluates one axiom's bounded statement over cfg.samples generated
// instances. Unknown names raise ValidationError listing the supported ones.
Report run_axiom_check(std::string_view axiom, Universe& u, const GenConfig& cfg);

const std::vector<std::string>& supported_axioms();

// The finality half of extensionality for one pair of graphs, parameterized
// over the canonicalization producing interning keys. With the real pipeline
// this holds for all inputs; a canonicalization that skips the bisimulation
// quotient is caught by it.
bool extensionality_witness(const Apg& g1, const Apg& g2,
                            const std::function<std::string(const Apg&)>& canonical_key);

// The shipped canonicalization: minimize then encode.
std::string canonical_key(const Apg& g);

}  // namespace hydra
