// Independent test oracles. These deliberately avoid the library's own
// computation paths: the eigensolver is a hand-rolled cyclic Jacobi sweep,
// the SVM oracle is projected gradient on the dense dual, and the power-law
// oracle is a likelihood grid search.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

// Cyclic Jacobi eigenvalue iteration for a dense symmetric matrix.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-22) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-15) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

// Grid-search maximizer of the continuous power-law likelihood with support
// shifted to x_min - 1/2 (the likelihood whose stationary point the discrete
// closed-form estimator evaluates). Derivative-free route against the
// algebraic formula.
inline double powerlaw_grid_search_alpha(const std::vector<int>& degrees) {
    double shifted_log_sum = 0.0;  // sum ln(x_i / 0.5)
    int n = 0;
    for (int x : degrees) {
        if (x <= 0) continue;
        ++n;
        shifted_log_sum += std::log(x / 0.5);
    }
    double best_alpha = 1.01, best_ll = -1e300;
    for (double alpha = 1.01; alpha <= 6.0 + 1e-12; alpha += 1e-3) {
        const double ll = n * std::log(alpha - 1.0) - alpha * shifted_log_sum;
        if (ll > best_ll) {
            best_ll = ll;
            best_alpha = alpha;
        }
    }
    return best_alpha;
}

// Projected gradient ascent on the SVM dual:
//   max sum a_i - 1/2 sum a_i a_j y_i y_j K_ij,  0 <= a_i <= C,  sum a_i y_i = 0.
// The projection onto box + hyperplane is exact (bisection on the shift).
struct DualSolution {
    std::vector<double> alpha;
    double objective = 0.0;
};

inline std::vector<double> project_box_hyperplane(std::vector<double> v,
                                                  const std::vector<int>& y, double C) {
    auto residual = [&](double lambda) {
        double r = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            r += y[i] * std::clamp(v[i] - lambda * y[i], 0.0, C);
        return r;
    };
    double lo = -1e6, hi = 1e6;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        // residual is non-increasing in lambda
        if (residual(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    const double lambda = 0.5 * (lo + hi);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = std::clamp(v[i] - lambda * y[i], 0.0, C);
    return v;
}

inline DualSolution svm_dual_projected_gradient(
    const std::vector<std::vector<double>>& kernel, const std::vector<int>& y, double C,
    int iterations = 200000) {
    const std::size_t n = y.size();
    // Step size 1/L with L bounded by the trace of Q.
    double lipschitz = 0.0;
    for (std::size_t i = 0; i < n; ++i) lipschitz += kernel[i][i];
    const double step = 1.0 / std::max(lipschitz, 1e-9);

    std::vector<double> a(n, 0.0), grad(n);
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double qi = 0.0;
            for (std::size_t j = 0; j < n; ++j) qi += kernel[i][j] * y[i] * y[j] * a[j];
            grad[i] = 1.0 - qi;
        }
        std::vector<double> next(n);
        for (std::size_t i = 0; i < n; ++i) next[i] = a[i] + step * grad[i];
        next = project_box_hyperplane(std::move(next), y, C);
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) delta = std::max(delta, std::abs(next[i] - a[i]));
        a = std::move(next);
        if (delta < 1e-12) break;
    }

    DualSolution sol;
    sol.alpha = a;
    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i) obj += a[i];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            obj -= 0.5 * a[i] * a[j] * y[i] * y[j] * kernel[i][j];
    sol.objective = obj;
    return sol;
}

}  // namespace oracle
