// Independent reference implementations used only to check the library.
// Nothing here shares code with the implementation paths under test.

#ifndef EDSVC_TESTS_ORACLES_HPP
#define EDSVC_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace oracles {

// Euclidean projection onto {beta : sum beta = 1, 0 <= beta_i <= C} via
// bisection on the shift.
inline std::vector<double> project_capped_simplex(std::vector<double> v, double c) {
    const std::size_t n = v.size();
    auto mass = [&](double tau) {
        double s = 0.0;
        for (double x : v) s += std::clamp(x - tau, 0.0, c);
        return s;
    };
    double lo = -1.0, hi = 1.0;
    for (double x : v) {
        lo = std::min(lo, x - c);
        hi = std::max(hi, x);
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mass(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    double tau = 0.5 * (lo + hi);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::clamp(v[i] - tau, 0.0, c);
    // distribute the residual over free coordinates so the sum is tight
    double sum = 0.0;
    for (double x : out) sum += x;
    double residual = 1.0 - sum;
    for (std::size_t i = 0; i < n && std::abs(residual) > 0.0; ++i) {
        double adj = std::clamp(out[i] + residual, 0.0, c) - out[i];
        out[i] += adj;
        residual -= adj;
    }
    return out;
}

// Projected gradient on the capped simplex for min beta' K beta.
// Fixed step 1/(2N), up to max_iters, early exit on a stationary iterate.
inline double projected_gradient_dual(const std::vector<double>& kmat,
                                      std::size_t n, double c,
                                      std::size_t max_iters = 1000000,
                                      std::vector<double>* beta_out = nullptr) {
    std::vector<double> beta(n, 1.0 / static_cast<double>(n));
    beta = project_capped_simplex(beta, c);
    const double step = 1.0 / (2.0 * static_cast<double>(n));
    std::vector<double> grad(n), trial(n);
    for (std::size_t it = 0; it < max_iters; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += kmat[i * n + j] * beta[j];
            grad[i] = 2.0 * s;
        }
        for (std::size_t i = 0; i < n; ++i) trial[i] = beta[i] - step * grad[i];
        trial = project_capped_simplex(trial, c);
        double move = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            move = std::max(move, std::abs(trial[i] - beta[i]));
        beta.swap(trial);
        if (move < 1e-14) break;
    }
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += kmat[i * n + j] * beta[j];
        f += beta[i] * s;
    }
    if (beta_out) *beta_out = beta;
    return 1.0 - f;  // dual objective W
}

// Brute-force NMI from joint frequencies, sqrt normalization, natural log.
inline double brute_force_nmi(const std::vector<int>& a, const std::vector<int>& b) {
    const double n = static_cast<double>(a.size());
    std::map<int, int> ca, cb;
    std::map<std::pair<int, int>, int> cab;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++ca[a[i]];
        ++cb[b[i]];
        ++cab[{a[i], b[i]}];
    }
    double ha = 0.0, hb = 0.0, mi = 0.0;
    for (auto& [k, c] : ca) ha -= (c / n) * std::log(c / n);
    for (auto& [k, c] : cb) hb -= (c / n) * std::log(c / n);
    for (auto& [kv, c] : cab) {
        double puv = c / n;
        double pu = ca[kv.first] / n;
        double pv = cb[kv.second] / n;
        mi += puv * std::log(puv / (pu * pv));
    }
    if (ha * hb == 0.0) return (ha == 0.0 && hb == 0.0) ? 1.0 : 0.0;
    return std::clamp(mi / std::sqrt(ha * hb), 0.0, 1.0);
}

// Floyd-Warshall transitive closure over an undirected edge list.
inline std::vector<int> floyd_warshall_components(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<char> reach(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) reach[i * n + i] = 1;
    for (auto [a, b] : edges) {
        reach[a * n + b] = 1;
        reach[b * n + a] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i * n + k] && reach[k * n + j]) reach[i * n + j] = 1;
    std::vector<int> comp(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (comp[i] != -1) continue;
        comp[i] = next;
        for (std::size_t j = i + 1; j < n; ++j)
            if (reach[i * n + j]) comp[j] = next;
        ++next;
    }
    return comp;
}

}  // namespace oracles

#endif
