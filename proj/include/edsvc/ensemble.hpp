#ifndef EDSVC_ENSEMBLE_HPP
#define EDSVC_ENSEMBLE_HPP

#include <cstdint>
#include <vector>

#include "edsvc/data.hpp"
#include "edsvc/labeling.hpp"

namespace edsvc {

struct KMeansConfig {
    std::size_t max_iters = 100;
    double rel_tolerance = 1e-6;  // centroid-shift threshold
};

// Lloyd k-means from random-point initialization. Empty clusters are reseeded
// at the point farthest from its assigned centroid, so all k clusters end
// non-empty. Deterministic for a fixed seed. When wcss_history is given it
// receives the within-cluster sum of squares after each assignment step.
Labeling kmeans(const DataMatrix& data, std::size_t k, std::uint64_t seed,
                const KMeansConfig& cfg = {},
                std::vector<double>* wcss_history = nullptr);

// The M base clusterings guiding parameter estimation.
struct Ensemble {
    std::vector<Labeling> members;
    std::vector<std::uint64_t> seeds;
};

// Largest integer whose cube is <= n.
std::size_t integer_cbrt(std::size_t n);

// M members of k-means with k drawn uniformly from {2, ..., floor(cbrt(N))}.
// Requires N >= 8 so the range is non-empty.
Ensemble generate_ensemble(const DataMatrix& data, std::size_t m_members,
                           std::uint64_t master_seed, const KMeansConfig& cfg = {});

}  // namespace edsvc

#endif
