#pragma once

#include <cstdint>
#include <vector>

#include "cendet/graph.hpp"

namespace cendet {

struct DegreeSequencePair {
    std::vector<int> in_seq;
    std::vector<int> out_seq;
};

struct GenerationConfig {
    int n = 1000;
    double alpha = 2.0;
    std::uint64_t seed = 0;
};

struct CmResult {
    DirectedMultigraph graph;
    int residual_self_loops_deleted = 0;
};

// n i.i.d. draws from P(k) ∝ k^(-alpha) on {1, ..., k_max} via inverse CDF.
std::vector<int> sample_powerlaw_degree_sequence(int n, double alpha, int k_max,
                                                 std::uint64_t seed);

// Truncated power-law pmf on {1,...,k_max}; shared with tests.
std::vector<double> truncated_powerlaw_pmf(double alpha, int k_max);

// Equalize stub counts: entries of the smaller-sum sequence at uniformly
// chosen indices are incremented by 1 until the sums match.
DegreeSequencePair balance_sequences(DegreeSequencePair pair, std::uint64_t seed);

// Directed configuration model: uniform stub pairing, then self-loop repair
// by degree-preserving stub swaps (bounded retries) and deletion of any
// residual self loops.
CmResult configuration_model(const DegreeSequencePair& pair, std::uint64_t seed);

// Full generation path: sample in/out sequences, balance, realize.
// Sub-seeds are derived deterministically from config.seed.
CmResult generate_reply_graph(const GenerationConfig& config);

}  // namespace cendet
