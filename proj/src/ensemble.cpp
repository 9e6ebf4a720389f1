#include "edsvc/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "edsvc/rng.hpp"

namespace edsvc {

double Rng::next_normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * next_double() - 1.0;
        v = 2.0 * next_double() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    have_spare_ = true;
    return u * scale;
}

namespace {

double sq_dist_point_centroid(const DataMatrix& data, std::size_t i,
                              const std::vector<double>& centroids, std::size_t c,
                              std::size_t d) {
    auto x = data.row(i);
    const double* mu = centroids.data() + c * d;
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        double diff = x[k] - mu[k];
        s += diff * diff;
    }
    return s;
}

}  // namespace

Labeling kmeans(const DataMatrix& data, std::size_t k, std::uint64_t seed,
                const KMeansConfig& cfg, std::vector<double>* wcss_history) {
    const std::size_t n = data.n_points(), d = data.n_dims();
    if (k < 1 || k > n)
        throw DataError("kmeans: k = " + std::to_string(k) +
                        " out of range for N = " + std::to_string(n));
    Rng rng(seed);

    // k distinct points, uniform without replacement
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<double> centroids(k * d);
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t pick = c + rng.next_below(n - c);
        std::swap(pool[c], pool[pick]);
        auto x = data.row(pool[c]);
        std::copy(x.begin(), x.end(), centroids.begin() + c * d);
    }

    std::vector<int> assign(n, -1);
    std::vector<double> new_centroids(k * d);
    std::vector<std::size_t> counts(k);
    for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
        double wcss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_sq = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                double sq = sq_dist_point_centroid(data, i, centroids, c, d);
                if (sq < best_sq) {
                    best_sq = sq;
                    best = static_cast<int>(c);
                }
            }
            assign[i] = best;
            wcss += best_sq;
        }
        if (wcss_history) wcss_history->push_back(wcss);

        std::fill(new_centroids.begin(), new_centroids.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto x = data.row(i);
            double* mu = new_centroids.data() + static_cast<std::size_t>(assign[i]) * d;
            for (std::size_t kk = 0; kk < d; ++kk) mu[kk] += x[kk];
            ++counts[static_cast<std::size_t>(assign[i])];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                // reseed at the point farthest from its assigned centroid
                std::size_t far_i = 0;
                double far_sq = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    double sq = sq_dist_point_centroid(
                        data, i, centroids, static_cast<std::size_t>(assign[i]), d);
                    if (sq > far_sq) {
                        far_sq = sq;
                        far_i = i;
                    }
                }
                auto x = data.row(far_i);
                std::copy(x.begin(), x.end(), new_centroids.begin() + c * d);
                assign[far_i] = static_cast<int>(c);
                counts[c] = 1;
            } else {
                double* mu = new_centroids.data() + c * d;
                for (std::size_t kk = 0; kk < d; ++kk)
                    mu[kk] /= static_cast<double>(counts[c]);
            }
        }

        double shift = 0.0;
        for (std::size_t v = 0; v < k * d; ++v) {
            double diff = new_centroids[v] - centroids[v];
            shift += diff * diff;
        }
        centroids.swap(new_centroids);
        if (std::sqrt(shift) < cfg.rel_tolerance) break;
    }

    // final assignment against the converged centroids
    for (std::size_t i = 0; i < n; ++i) {
        int best = 0;
        double best_sq = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            double sq = sq_dist_point_centroid(data, i, centroids, c, d);
            if (sq < best_sq) {
                best_sq = sq;
                best = static_cast<int>(c);
            }
        }
        assign[i] = best;
    }
    // the final assignment pass can empty a cluster; put the farthest point back
    for (std::size_t c = 0; c < k; ++c) {
        if (std::count(assign.begin(), assign.end(), static_cast<int>(c))) continue;
        std::size_t far_i = 0;
        double far_sq = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            double sq = sq_dist_point_centroid(
                data, i, centroids, static_cast<std::size_t>(assign[i]), d);
            if (sq > far_sq) {
                far_sq = sq;
                far_i = i;
            }
        }
        assign[far_i] = static_cast<int>(c);
    }

    Labeling out;
    out.assignments = std::move(assign);
    out.n_clusters = static_cast<int>(k);
    return out;
}

std::size_t integer_cbrt(std::size_t n) {
    std::size_t r = static_cast<std::size_t>(std::cbrt(static_cast<double>(n)));
    while ((r + 1) * (r + 1) * (r + 1) <= n) ++r;
    while (r > 0 && r * r * r > n) --r;
    return r;
}

Ensemble generate_ensemble(const DataMatrix& data, std::size_t m_members,
                           std::uint64_t master_seed, const KMeansConfig& cfg) {
    const std::size_t n = data.n_points();
    const std::size_t k_max = integer_cbrt(n);
    if (k_max < 2)
        throw DataError("generate_ensemble: N = " + std::to_string(n) +
                        " too small, need N >= 8 so that floor(cbrt(N)) >= 2");
    if (m_members < 1) throw DataError("generate_ensemble: need at least one member");

    Rng stream(master_seed);
    Ensemble ens;
    for (std::size_t m = 0; m < m_members; ++m) {
        const std::size_t k = 2 + stream.next_below(k_max - 1);
        const std::uint64_t seed = stream.next_u64();
        ens.members.push_back(kmeans(data, k, seed, cfg));
        ens.seeds.push_back(seed);
    }
    return ens;
}

}  // namespace edsvc
