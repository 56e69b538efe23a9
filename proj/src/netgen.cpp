#include "cendet/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cendet/rng.hpp"

namespace cendet {

std::vector<double> truncated_powerlaw_pmf(double alpha, int k_max) {
    std::vector<double> pmf(k_max);
    double z = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        pmf[k - 1] = std::pow(static_cast<double>(k), -alpha);
        z += pmf[k - 1];
    }
    for (double& p : pmf) p /= z;
    return pmf;
}

std::vector<int> sample_powerlaw_degree_sequence(int n, double alpha, int k_max,
                                                 std::uint64_t seed) {
    if (n < 1 || alpha <= 1.0 || k_max < 1)
        throw std::invalid_argument("sample_powerlaw_degree_sequence: invalid parameters");
    std::vector<double> cdf = truncated_powerlaw_pmf(alpha, k_max);
    std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());
    cdf.back() = 1.0;

    Rng rng(seed);
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform_real();
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        out[i] = static_cast<int>(it - cdf.begin()) + 1;
        if (out[i] > k_max) out[i] = k_max;
    }
    return out;
}

DegreeSequencePair balance_sequences(DegreeSequencePair pair, std::uint64_t seed) {
    if (pair.in_seq.size() != pair.out_seq.size())
        throw std::invalid_argument("balance_sequences: length mismatch");
    long long sum_in = std::accumulate(pair.in_seq.begin(), pair.in_seq.end(), 0LL);
    long long sum_out = std::accumulate(pair.out_seq.begin(), pair.out_seq.end(), 0LL);
    if (sum_in == sum_out) return pair;

    std::vector<int>& smaller = sum_in < sum_out ? pair.in_seq : pair.out_seq;
    long long deficit = std::llabs(sum_in - sum_out);
    Rng rng(seed);
    for (long long i = 0; i < deficit; ++i)
        ++smaller[rng.uniform_index(smaller.size())];
    return pair;
}

CmResult configuration_model(const DegreeSequencePair& pair, std::uint64_t seed) {
    const std::size_t n = pair.in_seq.size();
    if (pair.out_seq.size() != n)
        throw std::invalid_argument("configuration_model: length mismatch");
    long long sum_in = std::accumulate(pair.in_seq.begin(), pair.in_seq.end(), 0LL);
    long long sum_out = std::accumulate(pair.out_seq.begin(), pair.out_seq.end(), 0LL);
    if (sum_in != sum_out)
        throw std::invalid_argument("configuration_model: stub counts differ");

    std::vector<int> out_stubs, in_stubs;
    out_stubs.reserve(sum_out);
    in_stubs.reserve(sum_in);
    for (std::size_t v = 0; v < n; ++v) {
        for (int i = 0; i < pair.out_seq[v]; ++i) out_stubs.push_back(static_cast<int>(v));
        for (int i = 0; i < pair.in_seq[v]; ++i) in_stubs.push_back(static_cast<int>(v));
    }

    Rng rng(seed);
    rng.shuffle(in_stubs);
    const std::size_t m = out_stubs.size();

    // Self-loop repair: swap the in-stub of a self-loop pairing with the
    // in-stub of a uniformly chosen other pairing, accepting only swaps that
    // leave both pairings loop-free.
    std::vector<std::size_t> loops;
    for (std::size_t i = 0; i < m; ++i)
        if (out_stubs[i] == in_stubs[i]) loops.push_back(i);

    long long attempts_left = 100LL * static_cast<long long>(loops.size());
    while (!loops.empty() && attempts_left > 0) {
        std::size_t i = loops.back();
        std::size_t j = rng.uniform_index(m);
        --attempts_left;
        if (j == i) continue;
        if (out_stubs[i] != in_stubs[j] && out_stubs[j] != in_stubs[i]) {
            std::swap(in_stubs[i], in_stubs[j]);
            loops.pop_back();
        }
    }

    std::vector<Edge> edges;
    edges.reserve(m);
    int deleted = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (out_stubs[i] == in_stubs[i]) {
            ++deleted;
            continue;
        }
        edges.push_back({out_stubs[i], in_stubs[i]});
    }
    return {DirectedMultigraph(static_cast<int>(n), std::move(edges)), deleted};
}

CmResult generate_reply_graph(const GenerationConfig& config) {
    if (config.n < 2 || config.alpha <= 1.0)
        throw std::invalid_argument("generate_reply_graph: invalid config");
    const int k_max = config.n - 1;
    DegreeSequencePair pair;
    pair.in_seq = sample_powerlaw_degree_sequence(config.n, config.alpha, k_max,
                                                  splitmix64(config.seed ^ 0x1));
    pair.out_seq = sample_powerlaw_degree_sequence(config.n, config.alpha, k_max,
                                                   splitmix64(config.seed ^ 0x2));
    pair = balance_sequences(std::move(pair), splitmix64(config.seed ^ 0x3));
    return configuration_model(pair, splitmix64(config.seed ^ 0x4));
}

}  // namespace cendet
