#include "edsvc/estimator.hpp"

#include <cmath>

namespace edsvc {

namespace {

std::vector<double> log_uniform_grid(double lo, double hi, std::size_t count) {
    std::vector<double> out;
    out.reserve(count);
    if (count == 1) {
        out.push_back(lo);
        return out;
    }
    const double log_lo = std::log(lo), log_hi = std::log(hi);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back(std::exp(log_lo + t * (log_hi - log_lo)));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

ScanEntry evaluate_candidate(const DataMatrix& data, const DistanceMatrix& dists,
                             const Ensemble& ensemble, double q, double c,
                             double param_value, const PipelineConfigs& cfgs) {
    ScanEntry e;
    e.param_value = param_value;
    try {
        SvcResult res = svc_cluster(data, dists, q, c, cfgs.solver, cfgs.labeling);
        e.anmi = anmi(res.labeling, ensemble);
        e.n_clusters = res.labeling.n_clusters;
        e.n_svs = res.model.count_role(PointRole::SupportVector);
        e.n_bsvs = res.model.count_role(PointRole::BoundedSupportVector);
        e.solve_residual = kkt_residual(res.model, dists);
    } catch (const SolverError&) {
        e.failed = true;
        e.anmi = -1.0;
    }
    return e;
}

}  // namespace

std::vector<double> build_q_grid(const DistanceMatrix& dists, std::size_t n_q) {
    if (dists.size() < 2) throw DataError("build_q_grid: need at least two points");
    const double mean_sq = dists.mean_nonzero_sq_dist();
    if (mean_sq <= 0.0)
        throw DataError("build_q_grid: all points identical, no distance scale");
    return log_uniform_grid(0.1 / mean_sq, 100.0 / mean_sq, n_q);
}

std::vector<double> build_c_grid(std::size_t n_points, std::size_t n_c) {
    if (n_points < 1) throw DataError("build_c_grid: need at least one point");
    return log_uniform_grid(1.0 / static_cast<double>(n_points), 1.0, n_c);
}

ScanResult scan_q(const DataMatrix& data, const DistanceMatrix& dists,
                  const Ensemble& ensemble, const std::vector<double>& q_values,
                  double c_init, const PipelineConfigs& cfgs) {
    ScanResult res;
    std::size_t best = q_values.size();
    for (std::size_t i = 0; i < q_values.size(); ++i) {
        ScanEntry e = evaluate_candidate(data, dists, ensemble, q_values[i], c_init,
                                         q_values[i], cfgs);
        // strict > keeps the smaller q on ties
        if (!e.failed && (best == q_values.size() || e.anmi > res.entries[best].anmi))
            best = i;
        res.entries.push_back(e);
    }
    if (best == q_values.size())
        throw SolverError("scan_q: every candidate failed");
    res.best_param = q_values[best];
    return res;
}

ScanResult scan_c(const DataMatrix& data, const DistanceMatrix& dists,
                  const Ensemble& ensemble, const std::vector<double>& c_values,
                  double q_hat, const PipelineConfigs& cfgs) {
    ScanResult res;
    std::size_t best = c_values.size();
    for (std::size_t i = 0; i < c_values.size(); ++i) {
        ScanEntry e = evaluate_candidate(data, dists, ensemble, q_hat, c_values[i],
                                         c_values[i], cfgs);
        // >= moves ties toward the larger C (fewer BSVs)
        if (!e.failed && (best == c_values.size() || e.anmi >= res.entries[best].anmi))
            best = i;
        res.entries.push_back(e);
    }
    if (best == c_values.size())
        throw SolverError("scan_c: every candidate failed");
    res.best_param = c_values[best];
    return res;
}

EstimationResult estimate(const DataMatrix& data, const EstimatorConfig& config) {
    return estimate(data, pairwise_sq_dists(data), config);
}

EstimationResult estimate(const DataMatrix& data, const DistanceMatrix& dists,
                       const EstimatorConfig& config) {
    EstimationResult out;
    out.ensemble = generate_ensemble(data, config.m_members, config.master_seed,
                                     config.configs.kmeans);

    const auto q_values = build_q_grid(dists, config.n_q);
    ScanResult qs = scan_q(data, dists, out.ensemble, q_values, config.c_init,
                           config.configs);
    out.q_hat = qs.best_param;
    out.q_scan = std::move(qs.entries);

    const auto c_values = build_c_grid(data.n_points(), config.n_c);
    ScanResult cs = scan_c(data, dists, out.ensemble, c_values, out.q_hat,
                           config.configs);
    out.c_hat = cs.best_param;
    out.c_scan = std::move(cs.entries);

    SvcResult final_run = svc_cluster(data, dists, out.q_hat, out.c_hat,
                                      config.configs.solver, config.configs.labeling);
    out.final_labeling = std::move(final_run.labeling);
    out.final_anmi = anmi(out.final_labeling, out.ensemble);
    return out;
}

}  // namespace edsvc
