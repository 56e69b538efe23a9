#include "cendet/censor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cendet/rng.hpp"

namespace cendet {

const char* to_string(CensorStrategy s) {
    return s == CensorStrategy::uniform ? "uniform" : "icm";
}

CensorStrategy censor_strategy_from_string(const std::string& s) {
    if (s == "uniform") return CensorStrategy::uniform;
    if (s == "icm") return CensorStrategy::icm;
    throw std::invalid_argument("unknown censorship strategy: " + s);
}

namespace {

// Budget: floor(gamma * |E|).
std::size_t edge_budget(double gamma, std::size_t edge_count) {
    return static_cast<std::size_t>(std::floor(gamma * static_cast<double>(edge_count)));
}

DirectedMultigraph remove_by_index(const DirectedMultigraph& g,
                                   const std::vector<int>& removed) {
    std::vector<char> gone(g.edge_count(), 0);
    for (int idx : removed) gone[idx] = 1;
    std::vector<Edge> kept;
    kept.reserve(g.edge_count() - removed.size());
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        if (!gone[i]) kept.push_back(g.edges()[i]);
    return DirectedMultigraph(g.node_count(), std::move(kept));
}

}  // namespace

CensorshipResult censor_uniform(const DirectedMultigraph& g, double gamma,
                                std::uint64_t seed) {
    if (gamma <= 0.0 || gamma > 1.0) throw std::invalid_argument("gamma out of (0,1]");
    if (g.edge_count() == 0) throw std::invalid_argument("censor_uniform: empty graph");
    const std::size_t k = edge_budget(gamma, g.edge_count());

    // Partial Fisher-Yates over edge indices.
    std::vector<int> idx(g.edge_count());
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + rng.uniform_index(idx.size() - i);
        std::swap(idx[i], idx[j]);
    }
    std::vector<int> removed(idx.begin(), idx.begin() + k);
    return {remove_by_index(g, removed), std::move(removed), 0};
}

std::vector<int> select_icm_seeds(const DirectedMultigraph& g, double fraction) {
    if (fraction <= 0.0 || fraction > 1.0)
        throw std::invalid_argument("seed fraction out of (0,1]");
    auto [in, out] = degree_sequences(g);
    (void)in;
    const int k = std::max(1, static_cast<int>(std::lround(fraction * g.node_count())));
    std::vector<int> nodes(g.node_count());
    std::iota(nodes.begin(), nodes.end(), 0);
    std::stable_sort(nodes.begin(), nodes.end(),
                     [&](int a, int b) { return out[a] > out[b]; });
    nodes.resize(std::min<std::size_t>(k, nodes.size()));
    return nodes;
}

std::vector<int> run_icm_cascade(const DirectedMultigraph& g,
                                 const std::vector<int>& seeds, double p,
                                 std::uint64_t seed) {
    if (seeds.empty()) throw std::invalid_argument("run_icm_cascade: no seeds");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p out of [0,1]");
    const auto adj = g.out_adjacency();
    Rng rng(seed);

    std::vector<char> active(g.node_count(), 0);
    std::vector<int> frontier;
    for (int s : seeds) {
        if (!active[s]) {
            active[s] = 1;
            frontier.push_back(s);
        }
    }

    std::vector<int> cascade;
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int v : frontier) {
            for (const auto& [edge_idx, dst] : adj[v]) {
                if (!rng.bernoulli(p)) continue;
                cascade.push_back(edge_idx);
                if (!active[dst]) {
                    active[dst] = 1;
                    next.push_back(dst);
                }
            }
        }
        frontier = std::move(next);
    }
    return cascade;
}

CensorshipResult censor_icm(const DirectedMultigraph& g, const CensorshipPlan& plan) {
    if (plan.strategy != CensorStrategy::icm)
        throw std::invalid_argument("censor_icm: plan strategy is not icm");
    if (plan.gamma <= 0.0 || plan.gamma > 1.0)
        throw std::invalid_argument("gamma out of (0,1]");
    if (g.edge_count() == 0) throw std::invalid_argument("censor_icm: empty graph");

    const std::size_t budget = edge_budget(plan.gamma, g.edge_count());
    const std::vector<int> seeds = select_icm_seeds(g, plan.icm_seed_fraction);
    // Cap on cascade attempts before declaring the budget unreachable. Union
    // growth has a long geometric tail: rarely-activated sources contribute
    // their edges only once per ~1/(q*p) runs, so graphs whose closure barely
    // exceeds the budget can need tens of thousands of runs.
    constexpr int kMaxRuns = 2000000;

    std::vector<char> in_union(g.edge_count(), 0);
    std::vector<int> removed;  // union in discovery order
    int runs = 0;
    Rng seed_stream(plan.rng_seed);
    while (removed.size() < budget) {
        if (runs >= kMaxRuns) throw std::runtime_error("cascade budget unreachable");
        std::vector<int> cascade =
            run_icm_cascade(g, seeds, plan.icm_transmission_p, seed_stream.next_u64());
        ++runs;
        std::vector<int> fresh;
        for (int e : cascade) {
            if (!in_union[e]) {
                in_union[e] = 1;
                fresh.push_back(e);
            }
        }
        removed.insert(removed.end(), fresh.begin(), fresh.end());
        if (removed.size() > budget) {
            // Trim the final run's overshoot in reverse discovery order.
            while (removed.size() > budget) {
                in_union[removed.back()] = 0;
                removed.pop_back();
            }
        }
    }
    return {remove_by_index(g, removed), std::move(removed), runs};
}

CensorshipResult censor(const DirectedMultigraph& g, const CensorshipPlan& plan) {
    if (plan.strategy == CensorStrategy::uniform)
        return censor_uniform(g, plan.gamma, plan.rng_seed);
    return censor_icm(g, plan);
}

void write_removed_manifest(const std::string& path, const DirectedMultigraph& original,
                            const std::vector<int>& removed_edges) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    for (int idx : removed_edges) {
        const Edge& e = original.edges()[idx];
        os << e.src << "\t" << e.dst << "\t" << idx << "\n";
    }
}

}  // namespace cendet
