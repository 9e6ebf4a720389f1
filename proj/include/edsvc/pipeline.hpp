#ifndef EDSVC_PIPELINE_HPP
#define EDSVC_PIPELINE_HPP

#include <optional>
#include <string>

#include "edsvc/estimator.hpp"

namespace edsvc {

struct RunConfig {
    std::string input_path;
    LabelColumn label_column = LabelColumn::none();
    EstimatorConfig estimator;
    std::string output_dir = ".";
    bool use_distance_cache = false;
};

struct RunReport {
    std::size_t n_points = 0;
    std::size_t n_dims = 0;
    std::size_t n_classes = 0;  // 0 when no labels supplied
    double q_hat = 0.0;
    double c_hat = 0.0;
    int n_clusters = 0;
    double final_anmi = 0.0;
    std::optional<double> final_nmi_vs_truth;
    std::optional<double> mean_base_nmi_vs_truth;
    std::vector<double> base_nmi_vs_truth;  // per ensemble member
    std::uint64_t master_seed = 0;
    double seconds_load = 0.0;
    double seconds_ensemble = 0.0;
    double seconds_estimation = 0.0;
    EstimationResult estimation;
};

// Load, normalize, estimate, and write all artifacts (report.txt,
// labeling.csv, ensemble.csv, q_scan.csv, c_scan.csv) into output_dir.
// Ground-truth labels feed only the report columns.
RunReport run_pipeline(const RunConfig& config);

// Fig-3 style diagnostic: SVC across the whole q grid at a fixed C, with
// NMI against ground truth and ANMI against the ensemble per candidate.
// Requires a label column. Writes q_sweep.csv and returns its path.
std::string q_sweep(const RunConfig& config, double c_fixed);

// Serialization helpers shared by the pipeline and the tests.
void write_labeling_csv(const std::string& path, const Labeling& labeling);
void write_ensemble_csv(const std::string& path, const Ensemble& ensemble);
void write_scan_csv(const std::string& path, const std::string& stage,
                    const std::vector<ScanEntry>& entries);
void write_report(const std::string& path, const RunReport& report);

}  // namespace edsvc

#endif
