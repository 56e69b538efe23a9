#pragma once

#include <array>
#include <string>
#include <vector>

#include "cendet/graph.hpp"

namespace cendet {

inline constexpr int kTopologicalFeatureCount = 10;
inline constexpr int kSpectralFeatureCount = 50;
inline constexpr int kFeatureCount = kTopologicalFeatureCount + kSpectralFeatureCount;

// Canonical index map: 0 avgdeg, 1 assort, 2 dia, 3 rad, 4 clustering,
// 5 betcent, 6 in_alpha_fit, 7 in_likelihood_fit, 8 out_alpha_fit,
// 9 out_likelihood_fit, 10..59 spec0..spec49.
struct FeatureVector {
    std::array<double, kFeatureCount> values{};

    double operator[](int i) const { return values[i]; }
    double& operator[](int i) { return values[i]; }
};

const std::vector<std::string>& feature_names();

struct PowerLawFit {
    double alpha_hat = 0.0;
    double neg_log_likelihood = 0.0;
    int n_used = 0;
};

double average_degree(const DirectedMultigraph& g);

// Pearson correlation of endpoint degrees, each undirected edge counted in
// both orientations; 0.0 on fewer than 2 edges or zero degree variance.
double assortativity(const UndirectedSimpleGraph& ug);

// Eccentricities via BFS on the largest connected component.
std::pair<int, int> diameter_and_radius(const UndirectedSimpleGraph& ug);

double average_clustering(const UndirectedSimpleGraph& ug);

// Brandes betweenness, endpoints excluded, per-node normalization by
// (n-1)(n-2)/2 with n the full graph order, averaged over all nodes.
double average_betweenness(const UndirectedSimpleGraph& ug);

// Discrete power-law MLE with x_min = 1: zero degrees discarded,
// alpha_hat = 1 + n / sum(ln(x_i / 0.5)); the negative log-likelihood uses
// the normalization truncated at k_max.
PowerLawFit powerlaw_mle(const std::vector<int>& degrees, int k_max);

// First `count` eigenvalues (ascending) of the combinatorial Laplacian of
// the undirected simple graph, clamped to >= 0. Validates nonnegativity,
// the trace identity and the zero-multiplicity/component-count identity of
// the full spectrum before truncating.
std::vector<double> laplacian_spectrum_prefix(const UndirectedSimpleGraph& ug, int count);

FeatureVector extract_features(const DirectedMultigraph& g);

}  // namespace cendet
