#include "cendet/features.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stack>
#include <stdexcept>

namespace cendet {

const std::vector<std::string>& feature_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n = {"avgdeg",        "assort",
                                      "dia",           "rad",
                                      "clustering",    "betcent",
                                      "in_alpha_fit",  "in_likelihood_fit",
                                      "out_alpha_fit", "out_likelihood_fit"};
        for (int i = 0; i < kSpectralFeatureCount; ++i)
            n.push_back("spec" + std::to_string(i));
        return n;
    }();
    return names;
}

double average_degree(const DirectedMultigraph& g) {
    if (g.node_count() < 1) throw std::invalid_argument("average_degree: no nodes");
    return 2.0 * static_cast<double>(g.edge_count()) / g.node_count();
}

double assortativity(const UndirectedSimpleGraph& ug) {
    // Each edge contributes both (deg_a, deg_b) and (deg_b, deg_a), so the
    // two marginals coincide.
    double n = 0, sx = 0, sxx = 0, sxy = 0;
    for (int a = 0; a < ug.node_count; ++a) {
        const double da = ug.degree(a);
        for (int b : ug.adjacency[a]) {
            const double db = ug.degree(b);
            n += 1;
            sx += da;
            sxx += da * da;
            sxy += da * db;
        }
    }
    if (n < 4) return 0.0;  // fewer than 2 undirected edges
    const double mean = sx / n;
    const double var = sxx / n - mean * mean;
    if (var <= 1e-12) return 0.0;
    const double cov = sxy / n - mean * mean;
    return cov / var;
}

namespace {

// Eccentricity of src via BFS; graph assumed connected.
int eccentricity(const UndirectedSimpleGraph& g, int src, std::vector<int>& dist,
                 std::vector<int>& queue) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(src);
    dist[src] = 0;
    int ecc = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (int w : g.adjacency[v]) {
            if (dist[w] == -1) {
                dist[w] = dist[v] + 1;
                ecc = std::max(ecc, dist[w]);
                queue.push_back(w);
            }
        }
    }
    return ecc;
}

}  // namespace

std::pair<int, int> diameter_and_radius(const UndirectedSimpleGraph& ug) {
    const UndirectedSimpleGraph lcc = largest_connected_component(ug);
    if (lcc.node_count == 1) return {0, 0};
    int dia = 0, rad = lcc.node_count;
    std::vector<int> dist(lcc.node_count), queue;
    queue.reserve(lcc.node_count);
    for (int v = 0; v < lcc.node_count; ++v) {
        const int ecc = eccentricity(lcc, v, dist, queue);
        dia = std::max(dia, ecc);
        rad = std::min(rad, ecc);
    }
    return {dia, rad};
}

double average_clustering(const UndirectedSimpleGraph& ug) {
    if (ug.node_count == 0) return 0.0;
    double total = 0.0;
    for (int v = 0; v < ug.node_count; ++v) {
        const auto& nb = ug.adjacency[v];
        const int d = static_cast<int>(nb.size());
        if (d < 2) continue;
        int links = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (ug.has_edge(nb[i], nb[j])) ++links;
        total += 2.0 * links / (static_cast<double>(d) * (d - 1));
    }
    return total / ug.node_count;
}

double average_betweenness(const UndirectedSimpleGraph& ug) {
    const int n = ug.node_count;
    if (n < 3) return 0.0;
    std::vector<double> bc(n, 0.0);

    // Brandes accumulation; endpoints excluded.
    std::vector<int> dist(n), queue;
    std::vector<double> sigma(n), delta(n);
    std::vector<std::vector<int>> pred(n);
    queue.reserve(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : pred) p.clear();
        queue.clear();
        queue.push_back(s);
        dist[s] = 0;
        sigma[s] = 1.0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            for (int w : ug.adjacency[v]) {
                if (dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    pred[w].push_back(v);
                }
            }
        }
        for (auto it = queue.rbegin(); it != queue.rend(); ++it) {
            int w = *it;
            for (int v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) bc[w] += delta[w];
        }
    }

    // Each unordered pair was counted from both endpoints.
    const double pair_norm = static_cast<double>(n - 1) * (n - 2) / 2.0;
    double total = 0.0;
    for (double v : bc) total += (v / 2.0) / pair_norm;
    return total / n;
}

PowerLawFit powerlaw_mle(const std::vector<int>& degrees, int k_max) {
    if (k_max < 1) throw std::invalid_argument("powerlaw_mle: k_max < 1");
    double log_sum = 0.0;        // sum ln(x_i / 0.5)
    double log_sum_plain = 0.0;  // sum ln x_i
    int n_used = 0;
    for (int x : degrees) {
        if (x <= 0) continue;
        ++n_used;
        log_sum += std::log(x / 0.5);
        log_sum_plain += std::log(static_cast<double>(x));
    }
    if (n_used == 0) throw std::invalid_argument("degenerate degree sequence");

    PowerLawFit fit;
    fit.n_used = n_used;
    fit.alpha_hat = 1.0 + n_used / log_sum;

    double h = 0.0;  // truncated zeta at alpha_hat
    for (int k = 1; k <= k_max; ++k) h += std::pow(static_cast<double>(k), -fit.alpha_hat);
    fit.neg_log_likelihood = n_used * std::log(h) + fit.alpha_hat * log_sum_plain;
    return fit;
}

std::vector<double> laplacian_spectrum_prefix(const UndirectedSimpleGraph& ug, int count) {
    if (ug.node_count < count)
        throw std::invalid_argument("graph too small for spectral prefix");
    const int n = ug.node_count;
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    double degree_sum = 0.0;
    for (int v = 0; v < n; ++v) {
        lap(v, v) = ug.degree(v);
        degree_sum += ug.degree(v);
        for (int w : ug.adjacency[v]) lap(v, w) = -1.0;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("laplacian eigendecomposition failed");
    Eigen::VectorXd ev = solver.eigenvalues();  // ascending

    constexpr double tol = 1e-9;
    double trace = 0.0;
    int zeros = 0;
    for (int i = 0; i < n; ++i) {
        if (ev(i) < -tol) throw std::runtime_error("negative laplacian eigenvalue");
        if (ev(i) < 0.0) ev(i) = 0.0;
        trace += ev(i);
        // True zeros land near machine precision; the smallest genuine
        // positive eigenvalue at our scales is >> 1e-7.
        if (ev(i) <= 1e-7) ++zeros;
    }
    if (std::abs(trace - degree_sum) > 1e-6 * std::max(1.0, degree_sum))
        throw std::runtime_error("laplacian trace identity violated");
    if (zeros != connected_components(ug).second)
        throw std::runtime_error("zero-eigenvalue multiplicity != component count");

    return std::vector<double>(ev.data(), ev.data() + count);
}

FeatureVector extract_features(const DirectedMultigraph& g) {
    if (g.node_count() < kSpectralFeatureCount)
        throw std::invalid_argument("graph too small for spectral prefix");
    const UndirectedSimpleGraph ug = undirected_simple_projection(g);
    auto [in_deg, out_deg] = degree_sequences(g);
    const int k_max = std::max(1, g.node_count() - 1);

    FeatureVector f;
    f[0] = average_degree(g);
    f[1] = assortativity(ug);
    auto [dia, rad] = diameter_and_radius(ug);
    f[2] = dia;
    f[3] = rad;
    f[4] = average_clustering(ug);
    f[5] = average_betweenness(ug);
    const PowerLawFit in_fit = powerlaw_mle(in_deg, k_max);
    const PowerLawFit out_fit = powerlaw_mle(out_deg, k_max);
    f[6] = in_fit.alpha_hat;
    f[7] = in_fit.neg_log_likelihood;
    f[8] = out_fit.alpha_hat;
    f[9] = out_fit.neg_log_likelihood;

    const std::vector<double> spec = laplacian_spectrum_prefix(ug, kSpectralFeatureCount);
    for (int i = 0; i < kSpectralFeatureCount; ++i)
        f[kTopologicalFeatureCount + i] = spec[i];

    // Range and ordering checks hold for every extracted vector.
    if (f[1] < -1.0 - 1e-9 || f[1] > 1.0 + 1e-9)
        throw std::runtime_error("assortativity out of [-1,1]");
    if (!(f[3] <= f[2] && f[2] <= 2 * f[3] + 1e-9) && !(f[2] == 0 && f[3] == 0))
        throw std::runtime_error("radius/diameter ordering violated");
    for (double v : f.values)
        if (!std::isfinite(v)) throw std::runtime_error("non-finite feature value");
    return f;
}

}  // namespace cendet
