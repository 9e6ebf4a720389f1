// Command-line front end. Talks to the core exclusively through the C API in
// edsvc.h. Exit codes: 0 success, 1 usage error, 2 data error, 3 solver
// failure.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "edsvc.h"

namespace {

int status_to_exit_code(edsvc_status s) {
    switch (s) {
        case EDSVC_OK: return 0;
        case EDSVC_ERR_USAGE: return 1;
        case EDSVC_ERR_DATA: return 2;
        case EDSVC_ERR_SOLVER: return 3;
        default: return 3;
    }
}

int fail(edsvc_status s, const char* stage) {
    std::fprintf(stderr, "edsvc: %s: %s\n", stage, edsvc_last_error());
    return status_to_exit_code(s);
}

struct CommonArgs {
    std::string input;
    int label_column = -1;  // -1 none, -2 last, >=0 explicit index
    std::string output_dir;
    edsvc_config cfg;
};

void add_common_options(CLI::App* app, CommonArgs& args) {
    edsvc_config_default(&args.cfg);
    const char* env_dir = std::getenv("EDSVC_OUT_DIR");
    args.output_dir = env_dir ? env_dir : "edsvc_out";

    app->add_option("input", args.input, "input CSV file")->required();
    app->add_option("--label-column", args.label_column,
                    "ground-truth column: index (0-based), -2 for last, -1 for none");
    app->add_option("-o,--output-dir", args.output_dir,
                    "directory for artifacts (env: EDSVC_OUT_DIR)");
    app->add_option("--seed", args.cfg.master_seed, "master RNG seed");
    app->add_option("--members", args.cfg.m_members, "ensemble size M");
    app->add_option("--n-q", args.cfg.n_q, "size of the q grid");
    app->add_option("--n-c", args.cfg.n_c, "size of the C grid");
    app->add_option("--c0", args.cfg.c_init, "trade-off C fixed during the q scan");
    app->add_option("--kkt-tolerance", args.cfg.kkt_tolerance, "solver tolerance");
    app->add_option("--max-passes", args.cfg.max_passes, "solver sweep limit");
    app->add_option("--segment-samples", args.cfg.n_segment_samples,
                    "sample points per connectivity segment");
    app->add_option("--radius-slack", args.cfg.radius_slack,
                    "relative slack on the radius comparison");
    app->add_option("--kmeans-max-iters", args.cfg.kmeans_max_iters,
                    "Lloyd iteration limit");
}

int load_dataset(const CommonArgs& args, edsvc_dataset** ds) {
    edsvc_status s = edsvc_dataset_load_csv(args.input.c_str(), args.label_column, ds);
    if (s != EDSVC_OK) return fail(s, "load");
    return 0;
}

int cmd_run(const CommonArgs& args) {
    edsvc_dataset* ds = nullptr;
    if (int rc = load_dataset(args, &ds)) return rc;

    edsvc_result* res = nullptr;
    edsvc_status s = edsvc_run(ds, &args.cfg, &res);
    if (s != EDSVC_OK) {
        edsvc_dataset_free(ds);
        return fail(s, "run");
    }
    s = edsvc_result_write_artifacts(res, ds, args.output_dir.c_str());
    if (s != EDSVC_OK) {
        edsvc_result_free(res);
        edsvc_dataset_free(ds);
        return fail(s, "write");
    }

    std::printf("n_points=%zu n_dims=%zu n_classes=%zu\n",
                edsvc_dataset_n_points(ds), edsvc_dataset_n_dims(ds),
                edsvc_dataset_n_classes(ds));
    std::printf("q_hat=%.10g c_hat=%.10g n_clusters=%d final_anmi=%.6f\n",
                edsvc_result_q_hat(res), edsvc_result_c_hat(res),
                edsvc_result_n_clusters(res), edsvc_result_final_anmi(res));
    double truth = edsvc_result_nmi_vs_truth(res, ds);
    if (truth >= 0.0) {
        std::printf("nmi_vs_truth=%.6f mean_base_nmi=%.6f\n", truth,
                    edsvc_result_mean_base_nmi(res, ds));
    }
    std::printf("artifacts: %s\n", args.output_dir.c_str());

    edsvc_result_free(res);
    edsvc_dataset_free(ds);
    return 0;
}

int cmd_qsweep(const CommonArgs& args, double c_fixed) {
    edsvc_dataset* ds = nullptr;
    if (int rc = load_dataset(args, &ds)) return rc;

    edsvc_status s = edsvc_q_sweep(ds, &args.cfg, c_fixed, args.output_dir.c_str());
    edsvc_dataset_free(ds);
    if (s != EDSVC_OK) return fail(s, "qsweep");
    std::printf("wrote %s/q_sweep.csv\n", args.output_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EDSVC: support vector clustering with ensemble-guided "
                 "parameter estimation"};
    app.require_subcommand(1);

    CommonArgs run_args;
    CLI::App* run = app.add_subcommand(
        "run", "full pipeline: ensemble, parameter scans, final clustering");
    add_common_options(run, run_args);

    CommonArgs sweep_args;
    double c_fixed = 1.0;
    CLI::App* sweep = app.add_subcommand(
        "qsweep", "diagnostic NMI/ANMI sweep over the q grid at fixed C");
    add_common_options(sweep, sweep_args);
    sweep->add_option("--c-fixed", c_fixed, "trade-off C held fixed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (run->parsed()) return cmd_run(run_args);
    return cmd_qsweep(sweep_args, c_fixed);
}
