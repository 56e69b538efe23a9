#pragma once

#include <cstdint>
#include <vector>

#include "cendet/graph.hpp"

namespace cendet {

enum class CensorStrategy { uniform, icm };

const char* to_string(CensorStrategy s);
CensorStrategy censor_strategy_from_string(const std::string& s);

struct CensorshipPlan {
    CensorStrategy strategy = CensorStrategy::uniform;
    double gamma = 0.1;
    double icm_transmission_p = 0.1;
    double icm_seed_fraction = 0.005;
    std::uint64_t rng_seed = 0;
};

struct CensorshipResult {
    DirectedMultigraph censored_graph;
    std::vector<int> removed_edges;  // indices into the original edge list
    int runs_used = 0;               // icm only
};

// Remove exactly floor(gamma * |E|) edges chosen uniformly without
// replacement by edge-list index.
CensorshipResult censor_uniform(const DirectedMultigraph& g, double gamma,
                                std::uint64_t seed);

// Top max(1, round(fraction * n)) nodes by out-degree, ties by ascending id.
std::vector<int> select_icm_seeds(const DirectedMultigraph& g, double fraction);

// One synchronous-round independent cascade from the given seeds; returns
// the traversed edge indices in discovery order.
std::vector<int> run_icm_cascade(const DirectedMultigraph& g,
                                 const std::vector<int>& seeds, double p,
                                 std::uint64_t seed);

// Repeated cascades from the fixed top-out-degree seed set, union accumulated
// until floor(gamma * |E|) edges are covered; the final run's overshoot is
// trimmed in reverse discovery order. Throws if 2000000 runs cannot reach the
// budget ("cascade budget unreachable").
CensorshipResult censor_icm(const DirectedMultigraph& g, const CensorshipPlan& plan);

CensorshipResult censor(const DirectedMultigraph& g, const CensorshipPlan& plan);

// Removed-edge manifest: one "<src>\t<dst>\t<edge_index>" line per edge.
void write_removed_manifest(const std::string& path, const DirectedMultigraph& original,
                            const std::vector<int>& removed_edges);

}  // namespace cendet
