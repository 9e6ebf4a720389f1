/* C API for the EDSVC clustering library: opaque handles, integer status
 * codes, thread-local error messages. The CLI and language bindings link
 * against this surface only. */

#ifndef EDSVC_H
#define EDSVC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EDSVC_API __declspec(dllexport)
#else
#define EDSVC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum edsvc_status {
    EDSVC_OK = 0,
    EDSVC_ERR_USAGE = 1,  /* bad arguments / null handles */
    EDSVC_ERR_DATA = 2,   /* I/O or parse failure */
    EDSVC_ERR_SOLVER = 3, /* infeasible dual or all candidates failed */
    EDSVC_ERR_INTERNAL = 4
} edsvc_status;

/* Message for the most recent failing call on this thread. */
EDSVC_API const char* edsvc_last_error(void);

/* ---- datasets ------------------------------------------------------- */

typedef struct edsvc_dataset edsvc_dataset;

/* label_column: -1 none, -2 last column, >= 0 explicit 0-based index.
 * Features are min-max normalized to [0,1] on load. */
EDSVC_API edsvc_status edsvc_dataset_load_csv(const char* path, int label_column,
                                              edsvc_dataset** out);
EDSVC_API edsvc_status edsvc_dataset_parse_csv(const char* content,
                                               int label_column,
                                               edsvc_dataset** out);
EDSVC_API void edsvc_dataset_free(edsvc_dataset* ds);

EDSVC_API size_t edsvc_dataset_n_points(const edsvc_dataset* ds);
EDSVC_API size_t edsvc_dataset_n_dims(const edsvc_dataset* ds);
/* 0 when the dataset carries no labels */
EDSVC_API size_t edsvc_dataset_n_classes(const edsvc_dataset* ds);

/* ---- pipeline configuration ----------------------------------------- */

typedef struct edsvc_config {
    uint64_t master_seed;
    size_t m_members;     /* ensemble size M */
    size_t n_q;           /* q grid size */
    size_t n_c;           /* C grid size */
    double c_init;        /* C0 used while scanning q */
    double kkt_tolerance;
    size_t max_passes;
    size_t n_segment_samples;
    double radius_slack;
    size_t kmeans_max_iters;
    double kmeans_tolerance;
} edsvc_config;

/* Fills the standard defaults: M=10, n_q=n_c=100, C0=1. */
EDSVC_API void edsvc_config_default(edsvc_config* cfg);

/* ---- runs ------------------------------------------------------------ */

typedef struct edsvc_result edsvc_result;

/* Full pipeline: ensemble, q scan, C scan, final clustering. */
EDSVC_API edsvc_status edsvc_run(const edsvc_dataset* ds, const edsvc_config* cfg,
                                 edsvc_result** out);
EDSVC_API void edsvc_result_free(edsvc_result* res);

EDSVC_API double edsvc_result_q_hat(const edsvc_result* res);
EDSVC_API double edsvc_result_c_hat(const edsvc_result* res);
EDSVC_API int edsvc_result_n_clusters(const edsvc_result* res);
EDSVC_API double edsvc_result_final_anmi(const edsvc_result* res);
/* cluster id of point i, or -1 when i is out of range */
EDSVC_API int edsvc_result_label(const edsvc_result* res, size_t i);
/* NMI of the final clustering against the dataset labels; -1 without labels */
EDSVC_API double edsvc_result_nmi_vs_truth(const edsvc_result* res,
                                           const edsvc_dataset* ds);
/* mean over members of NMI(member, truth); -1 without labels */
EDSVC_API double edsvc_result_mean_base_nmi(const edsvc_result* res,
                                            const edsvc_dataset* ds);
/* NMI of ensemble member m against truth; -1 without labels or bad index */
EDSVC_API double edsvc_result_base_nmi(const edsvc_result* res,
                                       const edsvc_dataset* ds, size_t m);

/* Writes labeling.csv, ensemble.csv, q_scan.csv, c_scan.csv and report.txt
 * into dir (created when missing). */
EDSVC_API edsvc_status edsvc_result_write_artifacts(const edsvc_result* res,
                                                    const edsvc_dataset* ds,
                                                    const char* dir);

/* Fig-3 style diagnostic sweep over the q grid at fixed C; requires labels.
 * Writes q_sweep.csv into dir. */
EDSVC_API edsvc_status edsvc_q_sweep(const edsvc_dataset* ds,
                                     const edsvc_config* cfg, double c_fixed,
                                     const char* dir);

#ifdef __cplusplus
}
#endif

#endif /* EDSVC_H */
