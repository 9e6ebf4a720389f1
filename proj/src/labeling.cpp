#include "edsvc/labeling.hpp"

#include <algorithm>
#include <limits>

namespace edsvc {

namespace {

double sq_dist_rows(const DataMatrix& data, std::size_t i, std::size_t j) {
    auto a = data.row(i);
    auto b = data.row(j);
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double diff = a[k] - b[k];
        s += diff * diff;
    }
    return s;
}

// Segment test given the squared distances from both endpoints to every
// support point. A point y = (1-t) x_i + t x_j satisfies
//   ||y - x_k||^2 = (1-t)||x_i - x_k||^2 + t||x_j - x_k||^2 - t(1-t)||x_i - x_j||^2.
bool segment_connected_impl(const SphereModel& model,
                            std::span<const double> sq_i_to_support,
                            std::span<const double> sq_j_to_support,
                            double sq_ij, const LabelingConfig& cfg) {
    const auto& beta = model.beta();
    const auto& support = model.support_indices();
    const double q = model.q();
    const double limit = model.sq_radius() * (1.0 + cfg.radius_slack);
    const std::size_t m = cfg.n_segment_samples;
    for (std::size_t s = 1; s <= m; ++s) {
        const double t = static_cast<double>(s) / static_cast<double>(m + 1);
        double cross = 0.0;
        for (std::size_t k = 0; k < support.size(); ++k) {
            const double sq =
                (1.0 - t) * sq_i_to_support[k] + t * sq_j_to_support[k] -
                t * (1.0 - t) * sq_ij;
            cross += beta[support[k]] * gaussian_kernel(std::max(sq, 0.0), q);
        }
        const double radius = 1.0 - 2.0 * cross + model.self_kernel_term();
        if (radius > limit) return false;
    }
    return true;
}

std::vector<double> sq_dists_to_support(const SphereModel& model,
                                        const DataMatrix& data, std::size_t i) {
    const auto& support = model.support_indices();
    std::vector<double> out(support.size());
    for (std::size_t k = 0; k < support.size(); ++k)
        out[k] = sq_dist_rows(data, i, support[k]);
    return out;
}

}  // namespace

bool segment_connected(const SphereModel& model, const DataMatrix& data,
                       std::size_t i, std::size_t j, const LabelingConfig& cfg) {
    if (i == j) return true;
    const auto a = sq_dists_to_support(model, data, i);
    const auto b = sq_dists_to_support(model, data, j);
    return segment_connected_impl(model, a, b, sq_dist_rows(data, i, j), cfg);
}

AdjacencyGraph build_adjacency(const SphereModel& model, const DataMatrix& data,
                               const LabelingConfig& cfg) {
    AdjacencyGraph g;
    const std::size_t n = data.n_points();
    for (std::size_t i = 0; i < n; ++i)
        if (model.roles()[i] != PointRole::BoundedSupportVector)
            g.node_index_map.push_back(i);
    g.n_nodes = g.node_index_map.size();

    // Endpoint-to-support distances are shared across all pairs.
    std::vector<std::vector<double>> to_support(g.n_nodes);
    for (std::size_t a = 0; a < g.n_nodes; ++a)
        to_support[a] = sq_dists_to_support(model, data, g.node_index_map[a]);

    for (std::size_t a = 0; a < g.n_nodes; ++a) {
        for (std::size_t b = a + 1; b < g.n_nodes; ++b) {
            const double sq_ij =
                sq_dist_rows(data, g.node_index_map[a], g.node_index_map[b]);
            if (segment_connected_impl(model, to_support[a], to_support[b], sq_ij,
                                       cfg))
                g.edges.emplace_back(a, b);
        }
    }
    return g;
}

Labeling connected_components(const AdjacencyGraph& graph, std::size_t n_points) {
    std::vector<std::vector<std::size_t>> adj(graph.n_nodes);
    for (auto [a, b] : graph.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    Labeling out;
    out.assignments.assign(n_points, -1);
    std::vector<int> node_label(graph.n_nodes, -1);
    int next_id = 0;
    // Nodes are in increasing point-index order, so a scan assigns component
    // ids by smallest member index.
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < graph.n_nodes; ++start) {
        if (node_label[start] != -1) continue;
        const int id = next_id++;
        stack.assign(1, start);
        node_label[start] = id;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            out.assignments[graph.node_index_map[v]] = id;
            for (std::size_t w : adj[v])
                if (node_label[w] == -1) {
                    node_label[w] = id;
                    stack.push_back(w);
                }
        }
    }
    out.n_clusters = next_id;
    return out;
}

BsvAssignment assign_bsvs(const Labeling& partial, const SphereModel& model,
                          const DistanceMatrix& dists) {
    BsvAssignment out;
    out.labeling = partial;
    const std::size_t n = partial.assignments.size();

    bool any_labeled = false;
    for (int a : partial.assignments)
        if (a >= 0) { any_labeled = true; break; }
    if (!any_labeled) {
        out.labeling.assignments.assign(n, 0);
        out.labeling.n_clusters = 1;
        out.all_bsv_fallback = true;
        return out;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (out.labeling.assignments[i] >= 0) continue;
        std::size_t nearest = n;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (partial.assignments[j] < 0) continue;
            if (dists(i, j) < best) {
                best = dists(i, j);
                nearest = j;
            }
        }
        out.labeling.assignments[i] = partial.assignments[nearest];
    }
    (void)model;
    return out;
}

SvcResult svc_cluster(const DataMatrix& data, const DistanceMatrix& dists, double q,
                      double c_param, const SolverConfig& solver_cfg,
                      const LabelingConfig& label_cfg) {
    SvcResult res;
    res.model = solve_wolfe_dual(dists, q, c_param, solver_cfg);
    AdjacencyGraph g = build_adjacency(res.model, data, label_cfg);
    Labeling partial = connected_components(g, data.n_points());
    BsvAssignment full = assign_bsvs(partial, res.model, dists);
    res.labeling = std::move(full.labeling);
    res.all_bsv_fallback = full.all_bsv_fallback;
    return res;
}

}  // namespace edsvc
