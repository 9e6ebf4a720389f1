#ifndef EDSVC_LABELING_HPP
#define EDSVC_LABELING_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "edsvc/data.hpp"
#include "edsvc/svc.hpp"

namespace edsvc {

// A partition of the N points into clusters 0..n_clusters-1.
struct Labeling {
    std::vector<int> assignments;
    int n_clusters = 0;
};

struct LabelingConfig {
    std::size_t n_segment_samples = 10;  // interior sample points per segment
    double radius_slack = 1e-7;          // relative slack on the R^2 comparison
};

// Connectivity graph over the non-BSV points.
struct AdjacencyGraph {
    std::size_t n_nodes = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // node indices, i < j
    std::vector<std::size_t> node_index_map;                 // node -> point index
};

// True iff the kernel radius stays within R^2*(1+slack) at every interior
// sample of the segment from x_i to x_j. Symmetric; true for i == j.
bool segment_connected(const SphereModel& model, const DataMatrix& data,
                       std::size_t i, std::size_t j, const LabelingConfig& cfg);

AdjacencyGraph build_adjacency(const SphereModel& model, const DataMatrix& data,
                               const LabelingConfig& cfg);

// Component ids numbered 0..k-1 in order of smallest member point index.
// The result labels non-BSV points only; assignments has length N with -1 at
// BSV positions.
Labeling connected_components(const AdjacencyGraph& graph, std::size_t n_points);

// Each BSV takes the label of its nearest non-BSV point (ties toward the
// smaller index). All-BSV degenerate case collapses to one cluster and sets
// the warning flag.
struct BsvAssignment {
    Labeling labeling;
    bool all_bsv_fallback = false;
};
BsvAssignment assign_bsvs(const Labeling& partial, const SphereModel& model,
                          const DistanceMatrix& dists);

// Full SVC run: solve the dual, connect, label.
struct SvcResult {
    Labeling labeling;
    SphereModel model;
    bool all_bsv_fallback = false;
};
SvcResult svc_cluster(const DataMatrix& data, const DistanceMatrix& dists, double q,
                      double c_param, const SolverConfig& solver_cfg = {},
                      const LabelingConfig& label_cfg = {});

}  // namespace edsvc

#endif
