#include "edsvc/pipeline.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace edsvc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open '" + path + "' for writing");
    return f;
}

struct PreparedInput {
    DataMatrix data;
    std::optional<GroundTruthLabels> labels;
    DistanceMatrix dists;
};

PreparedInput prepare_input(const RunConfig& config) {
    std::ifstream f(config.input_path, std::ios::binary);
    if (!f) throw DataError("cannot open '" + config.input_path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    const std::string raw = ss.str();

    LoadedDataset loaded = parse_csv(raw, config.label_column, config.input_path);
    DataMatrix normalized = normalize_minmax(loaded.data);

    std::uint64_t cache_key = content_hash(raw);
    if (config.label_column.kind == LabelColumn::Kind::Index)
        cache_key ^= 0x1000 + config.label_column.index;
    else if (config.label_column.kind == LabelColumn::Kind::Last)
        cache_key ^= 0xfff;

    const std::string cache_path = config.input_path + ".dists";
    if (config.use_distance_cache) {
        if (auto cached = read_distance_cache(cache_path, cache_key);
            cached && cached->size() == normalized.n_points())
            return {std::move(normalized), std::move(loaded.labels),
                    std::move(*cached)};
    }
    DistanceMatrix dists = pairwise_sq_dists(normalized);
    if (config.use_distance_cache) write_distance_cache(cache_path, cache_key, dists);
    return {std::move(normalized), std::move(loaded.labels), std::move(dists)};
}

}  // namespace

void write_labeling_csv(const std::string& path, const Labeling& labeling) {
    auto f = open_out(path);
    f << "point,cluster\n";
    for (std::size_t i = 0; i < labeling.assignments.size(); ++i)
        f << i << ',' << labeling.assignments[i] << '\n';
}

void write_ensemble_csv(const std::string& path, const Ensemble& ensemble) {
    auto f = open_out(path);
    for (std::size_t m = 0; m < ensemble.members.size(); ++m)
        f << (m ? "," : "") << "member_" << m;
    f << '\n';
    const std::size_t n = ensemble.members.empty()
                              ? 0
                              : ensemble.members.front().assignments.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t m = 0; m < ensemble.members.size(); ++m)
            f << (m ? "," : "") << ensemble.members[m].assignments[i];
        f << '\n';
    }
}

void write_scan_csv(const std::string& path, const std::string& stage,
                    const std::vector<ScanEntry>& entries) {
    auto f = open_out(path);
    f << "stage,param_value,anmi,n_clusters,n_svs,n_bsvs,solve_residual\n";
    for (const ScanEntry& e : entries)
        f << stage << ',' << fmt_double(e.param_value) << ',' << fmt_double(e.anmi)
          << ',' << e.n_clusters << ',' << e.n_svs << ',' << e.n_bsvs << ','
          << fmt_double(e.solve_residual) << '\n';
}

void write_report(const std::string& path, const RunReport& r) {
    auto f = open_out(path);
    f << "n_points=" << r.n_points << '\n';
    f << "n_dims=" << r.n_dims << '\n';
    f << "n_classes=" << r.n_classes << '\n';
    f << "master_seed=" << r.master_seed << '\n';
    f << "q_hat=" << fmt_double(r.q_hat) << '\n';
    f << "c_hat=" << fmt_double(r.c_hat) << '\n';
    f << "n_clusters=" << r.n_clusters << '\n';
    f << "final_anmi=" << fmt_double(r.final_anmi) << '\n';
    if (r.final_nmi_vs_truth)
        f << "final_nmi_vs_truth=" << fmt_double(*r.final_nmi_vs_truth) << '\n';
    if (r.mean_base_nmi_vs_truth)
        f << "mean_base_nmi_vs_truth=" << fmt_double(*r.mean_base_nmi_vs_truth)
          << '\n';
    for (std::size_t m = 0; m < r.base_nmi_vs_truth.size(); ++m)
        f << "base_nmi_vs_truth_" << m << '='
          << fmt_double(r.base_nmi_vs_truth[m]) << '\n';
    f << "seconds_load=" << fmt_double(r.seconds_load) << '\n';
    f << "seconds_ensemble=" << fmt_double(r.seconds_ensemble) << '\n';
    f << "seconds_estimation=" << fmt_double(r.seconds_estimation) << '\n';
}

RunReport run_pipeline(const RunConfig& config) {
    std::filesystem::create_directories(config.output_dir);
    RunReport report;
    report.master_seed = config.estimator.master_seed;

    auto t0 = Clock::now();
    PreparedInput in = prepare_input(config);
    report.seconds_load = seconds_since(t0);
    report.n_points = in.data.n_points();
    report.n_dims = in.data.n_dims();
    if (in.labels) {
        std::set<int> classes(in.labels->labels.begin(), in.labels->labels.end());
        report.n_classes = classes.size();
    }

    auto t1 = Clock::now();
    report.estimation = estimate(in.data, in.dists, config.estimator);
    report.seconds_estimation = seconds_since(t1);

    report.q_hat = report.estimation.q_hat;
    report.c_hat = report.estimation.c_hat;
    report.n_clusters = report.estimation.final_labeling.n_clusters;
    report.final_anmi = report.estimation.final_anmi;

    if (in.labels) {
        report.final_nmi_vs_truth =
            nmi(report.estimation.final_labeling.assignments, in.labels->labels);
        double sum = 0.0;
        for (const Labeling& member : report.estimation.ensemble.members) {
            double s = nmi(member.assignments, in.labels->labels);
            report.base_nmi_vs_truth.push_back(s);
            sum += s;
        }
        report.mean_base_nmi_vs_truth =
            sum / static_cast<double>(report.estimation.ensemble.members.size());
    }

    const std::filesystem::path out(config.output_dir);
    write_labeling_csv((out / "labeling.csv").string(),
                       report.estimation.final_labeling);
    write_ensemble_csv((out / "ensemble.csv").string(), report.estimation.ensemble);
    write_scan_csv((out / "q_scan.csv").string(), "q", report.estimation.q_scan);
    write_scan_csv((out / "c_scan.csv").string(), "c", report.estimation.c_scan);
    write_report((out / "report.txt").string(), report);
    return report;
}

std::string q_sweep(const RunConfig& config, double c_fixed) {
    if (config.label_column.kind == LabelColumn::Kind::None)
        throw DataError("q_sweep: a label column is required");
    std::filesystem::create_directories(config.output_dir);

    PreparedInput in = prepare_input(config);
    if (!in.labels) throw DataError("q_sweep: no labels parsed");

    Ensemble ensemble =
        generate_ensemble(in.data, config.estimator.m_members,
                          config.estimator.master_seed,
                          config.estimator.configs.kmeans);
    const auto q_values = build_q_grid(in.dists, config.estimator.n_q);

    const std::string path =
        (std::filesystem::path(config.output_dir) / "q_sweep.csv").string();
    auto f = open_out(path);
    f << "log2_q,nmi_vs_truth,anmi,n_clusters\n";
    for (double q : q_values) {
        SvcResult res =
            svc_cluster(in.data, in.dists, q, c_fixed,
                        config.estimator.configs.solver,
                        config.estimator.configs.labeling);
        const double truth = nmi(res.labeling.assignments, in.labels->labels);
        const double guidance = anmi(res.labeling, ensemble);
        f << fmt_double(std::log2(q)) << ',' << fmt_double(truth) << ','
          << fmt_double(guidance) << ',' << res.labeling.n_clusters << '\n';
    }
    return path;
}

}  // namespace edsvc
