#ifndef EDSVC_ESTIMATOR_HPP
#define EDSVC_ESTIMATOR_HPP

#include <cstdint>
#include <vector>

#include "edsvc/data.hpp"
#include "edsvc/ensemble.hpp"
#include "edsvc/eval.hpp"
#include "edsvc/labeling.hpp"
#include "edsvc/svc.hpp"

namespace edsvc {

// n_q log-uniform widths spanning [0.1/D, 100/D] with D the mean nonzero
// squared pairwise distance. Throws when all points coincide.
std::vector<double> build_q_grid(const DistanceMatrix& dists, std::size_t n_q);

// n_c log-uniform trade-offs spanning [1/N, 1]; every value is feasible.
std::vector<double> build_c_grid(std::size_t n_points, std::size_t n_c);

struct ScanEntry {
    double param_value = 0.0;
    double anmi = -1.0;  // -1 marks a failed candidate, excluded from argmax
    int n_clusters = 0;
    std::size_t n_svs = 0;
    std::size_t n_bsvs = 0;
    double solve_residual = 0.0;
    bool failed = false;
};

struct PipelineConfigs {
    SolverConfig solver;
    LabelingConfig labeling;
    KMeansConfig kmeans;
};

struct ScanResult {
    double best_param = 0.0;
    std::vector<ScanEntry> entries;
};

// Evaluate SVC at every q with C fixed at c_init; argmax ANMI, ties toward
// the smaller q.
ScanResult scan_q(const DataMatrix& data, const DistanceMatrix& dists,
                  const Ensemble& ensemble, const std::vector<double>& q_values,
                  double c_init, const PipelineConfigs& cfgs);

// Evaluate SVC at every C with q fixed at q_hat; ties toward the larger C.
ScanResult scan_c(const DataMatrix& data, const DistanceMatrix& dists,
                  const Ensemble& ensemble, const std::vector<double>& c_values,
                  double q_hat, const PipelineConfigs& cfgs);

struct EstimatorConfig {
    std::size_t n_q = 100;
    std::size_t n_c = 100;
    double c_init = 1.0;  // C >= 1 disables BSVs during the q scan
    std::size_t m_members = 10;
    std::uint64_t master_seed = 1;
    PipelineConfigs configs;
};

struct EstimationResult {
    double q_hat = 0.0;
    double c_hat = 0.0;
    std::vector<ScanEntry> q_scan;
    std::vector<ScanEntry> c_scan;
    Labeling final_labeling;
    double final_anmi = 0.0;
    Ensemble ensemble;
};

// The full pipeline: generate the ensemble, scan q at C0, scan C at q_hat,
// rerun SVC with the selected pair. Never reads ground-truth labels.
EstimationResult estimate(const DataMatrix& data, const EstimatorConfig& config);
EstimationResult estimate(const DataMatrix& data, const DistanceMatrix& dists,
                       const EstimatorConfig& config);

}  // namespace edsvc

#endif
