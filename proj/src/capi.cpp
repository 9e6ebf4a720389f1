#include "edsvc.h"

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <set>
#include <string>

#include "edsvc/estimator.hpp"
#include "edsvc/pipeline.hpp"

namespace {

thread_local std::string g_last_error;

edsvc_status set_error(edsvc_status code, const char* what) {
    g_last_error = what ? what : "";
    return code;
}

template <typename Fn>
edsvc_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const edsvc::SolverError& e) {
        return set_error(EDSVC_ERR_SOLVER, e.what());
    } catch (const edsvc::DataError& e) {
        return set_error(EDSVC_ERR_DATA, e.what());
    } catch (const std::exception& e) {
        return set_error(EDSVC_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(EDSVC_ERR_INTERNAL, "unknown error");
    }
}

edsvc::LabelColumn to_label_column(int spec) {
    if (spec == -2) return edsvc::LabelColumn::last();
    if (spec >= 0) return edsvc::LabelColumn::at(static_cast<std::size_t>(spec));
    return edsvc::LabelColumn::none();
}

edsvc::EstimatorConfig to_estimator_config(const edsvc_config& c) {
    edsvc::EstimatorConfig out;
    out.master_seed = c.master_seed;
    out.m_members = c.m_members;
    out.n_q = c.n_q;
    out.n_c = c.n_c;
    out.c_init = c.c_init;
    out.configs.solver.kkt_tolerance = c.kkt_tolerance;
    out.configs.solver.max_passes = c.max_passes;
    out.configs.labeling.n_segment_samples = c.n_segment_samples;
    out.configs.labeling.radius_slack = c.radius_slack;
    out.configs.kmeans.max_iters = c.kmeans_max_iters;
    out.configs.kmeans.rel_tolerance = c.kmeans_tolerance;
    return out;
}

}  // namespace

struct edsvc_dataset {
    edsvc::DataMatrix data;
    std::optional<edsvc::GroundTruthLabels> labels;
    edsvc::DistanceMatrix dists;
};

struct edsvc_result {
    edsvc::EstimationResult estimation;
};

namespace {

edsvc_status dataset_from_loaded(edsvc::LoadedDataset loaded, edsvc_dataset** out) {
    edsvc::DataMatrix normalized = edsvc::normalize_minmax(loaded.data);
    edsvc::DistanceMatrix dists = edsvc::pairwise_sq_dists(normalized);
    *out = new edsvc_dataset{std::move(normalized), std::move(loaded.labels),
                             std::move(dists)};
    return EDSVC_OK;
}

}  // namespace

extern "C" {

const char* edsvc_last_error(void) { return g_last_error.c_str(); }

edsvc_status edsvc_dataset_load_csv(const char* path, int label_column,
                                    edsvc_dataset** out) {
    if (!path || !out) return set_error(EDSVC_ERR_USAGE, "null argument");
    *out = nullptr;
    return guarded([&] {
        return dataset_from_loaded(
            edsvc::load_csv(path, to_label_column(label_column)), out);
    });
}

edsvc_status edsvc_dataset_parse_csv(const char* content, int label_column,
                                     edsvc_dataset** out) {
    if (!content || !out) return set_error(EDSVC_ERR_USAGE, "null argument");
    *out = nullptr;
    return guarded([&] {
        return dataset_from_loaded(
            edsvc::parse_csv(content, to_label_column(label_column)), out);
    });
}

void edsvc_dataset_free(edsvc_dataset* ds) { delete ds; }

size_t edsvc_dataset_n_points(const edsvc_dataset* ds) {
    return ds ? ds->data.n_points() : 0;
}

size_t edsvc_dataset_n_dims(const edsvc_dataset* ds) {
    return ds ? ds->data.n_dims() : 0;
}

size_t edsvc_dataset_n_classes(const edsvc_dataset* ds) {
    if (!ds || !ds->labels) return 0;
    std::set<int> classes(ds->labels->labels.begin(), ds->labels->labels.end());
    return classes.size();
}

void edsvc_config_default(edsvc_config* cfg) {
    if (!cfg) return;
    edsvc::EstimatorConfig d;
    cfg->master_seed = d.master_seed;
    cfg->m_members = d.m_members;
    cfg->n_q = d.n_q;
    cfg->n_c = d.n_c;
    cfg->c_init = d.c_init;
    cfg->kkt_tolerance = d.configs.solver.kkt_tolerance;
    cfg->max_passes = d.configs.solver.max_passes;
    cfg->n_segment_samples = d.configs.labeling.n_segment_samples;
    cfg->radius_slack = d.configs.labeling.radius_slack;
    cfg->kmeans_max_iters = d.configs.kmeans.max_iters;
    cfg->kmeans_tolerance = d.configs.kmeans.rel_tolerance;
}

edsvc_status edsvc_run(const edsvc_dataset* ds, const edsvc_config* cfg,
                       edsvc_result** out) {
    if (!ds || !cfg || !out) return set_error(EDSVC_ERR_USAGE, "null argument");
    *out = nullptr;
    return guarded([&] {
        auto res = std::make_unique<edsvc_result>();
        res->estimation = edsvc::estimate(ds->data, ds->dists, to_estimator_config(*cfg));
        *out = res.release();
        return EDSVC_OK;
    });
}

void edsvc_result_free(edsvc_result* res) { delete res; }

double edsvc_result_q_hat(const edsvc_result* res) {
    return res ? res->estimation.q_hat : 0.0;
}

double edsvc_result_c_hat(const edsvc_result* res) {
    return res ? res->estimation.c_hat : 0.0;
}

int edsvc_result_n_clusters(const edsvc_result* res) {
    return res ? res->estimation.final_labeling.n_clusters : 0;
}

double edsvc_result_final_anmi(const edsvc_result* res) {
    return res ? res->estimation.final_anmi : 0.0;
}

int edsvc_result_label(const edsvc_result* res, size_t i) {
    if (!res || i >= res->estimation.final_labeling.assignments.size()) return -1;
    return res->estimation.final_labeling.assignments[i];
}

double edsvc_result_nmi_vs_truth(const edsvc_result* res, const edsvc_dataset* ds) {
    if (!res || !ds || !ds->labels) return -1.0;
    return edsvc::nmi(res->estimation.final_labeling.assignments,
                      ds->labels->labels);
}

double edsvc_result_base_nmi(const edsvc_result* res, const edsvc_dataset* ds,
                             size_t m) {
    if (!res || !ds || !ds->labels || m >= res->estimation.ensemble.members.size())
        return -1.0;
    return edsvc::nmi(res->estimation.ensemble.members[m].assignments,
                      ds->labels->labels);
}

double edsvc_result_mean_base_nmi(const edsvc_result* res, const edsvc_dataset* ds) {
    if (!res || !ds || !ds->labels || res->estimation.ensemble.members.empty())
        return -1.0;
    double sum = 0.0;
    for (const auto& member : res->estimation.ensemble.members)
        sum += edsvc::nmi(member.assignments, ds->labels->labels);
    return sum / static_cast<double>(res->estimation.ensemble.members.size());
}

edsvc_status edsvc_result_write_artifacts(const edsvc_result* res,
                                          const edsvc_dataset* ds,
                                          const char* dir) {
    if (!res || !ds || !dir) return set_error(EDSVC_ERR_USAGE, "null argument");
    return guarded([&] {
        std::filesystem::create_directories(dir);
        const std::filesystem::path out(dir);
        edsvc::write_labeling_csv((out / "labeling.csv").string(),
                                  res->estimation.final_labeling);
        edsvc::write_ensemble_csv((out / "ensemble.csv").string(),
                                  res->estimation.ensemble);
        edsvc::write_scan_csv((out / "q_scan.csv").string(), "q",
                              res->estimation.q_scan);
        edsvc::write_scan_csv((out / "c_scan.csv").string(), "c",
                              res->estimation.c_scan);

        edsvc::RunReport report;
        report.n_points = ds->data.n_points();
        report.n_dims = ds->data.n_dims();
        report.n_classes = edsvc_dataset_n_classes(ds);
        report.q_hat = res->estimation.q_hat;
        report.c_hat = res->estimation.c_hat;
        report.n_clusters = res->estimation.final_labeling.n_clusters;
        report.final_anmi = res->estimation.final_anmi;
        if (ds->labels) {
            report.final_nmi_vs_truth = edsvc_result_nmi_vs_truth(res, ds);
            for (std::size_t m = 0; m < res->estimation.ensemble.members.size(); ++m)
                report.base_nmi_vs_truth.push_back(
                    edsvc_result_base_nmi(res, ds, m));
            report.mean_base_nmi_vs_truth = edsvc_result_mean_base_nmi(res, ds);
        }
        edsvc::write_report((out / "report.txt").string(), report);
        return EDSVC_OK;
    });
}

edsvc_status edsvc_q_sweep(const edsvc_dataset* ds, const edsvc_config* cfg,
                           double c_fixed, const char* dir) {
    if (!ds || !cfg || !dir) return set_error(EDSVC_ERR_USAGE, "null argument");
    if (!ds->labels)
        return set_error(EDSVC_ERR_USAGE, "q_sweep requires a label column");
    return guarded([&] {
        const auto est = to_estimator_config(*cfg);
        edsvc::Ensemble ensemble = edsvc::generate_ensemble(
            ds->data, est.m_members, est.master_seed, est.configs.kmeans);
        const auto q_values = edsvc::build_q_grid(ds->dists, est.n_q);

        std::filesystem::create_directories(dir);
        const std::string path =
            (std::filesystem::path(dir) / "q_sweep.csv").string();
        std::ofstream f(path, std::ios::binary);
        if (!f) throw edsvc::DataError("cannot open '" + path + "' for writing");
        f << "log2_q,nmi_vs_truth,anmi,n_clusters\n";
        char buf[128];
        for (double q : q_values) {
            edsvc::SvcResult r =
                edsvc::svc_cluster(ds->data, ds->dists, q, c_fixed,
                                   est.configs.solver, est.configs.labeling);
            const double truth =
                edsvc::nmi(r.labeling.assignments, ds->labels->labels);
            const double guidance = edsvc::anmi(r.labeling, ensemble);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d\n", std::log2(q),
                          truth, guidance, r.labeling.n_clusters);
            f << buf;
        }
        return EDSVC_OK;
    });
}

}  // extern "C"
