#ifndef PATHSPACE_H
#define PATHSPACE_H

/* C API of the pathspace library: Skorokhod J1 distances, moduli of
 * continuity, test-function families, replication bases and empirical
 * weak-convergence / tightness diagnostics for simulated cadlag paths.
 *
 * Conventions:
 *  - objects are opaque handles, released with the matching *_free call;
 *  - functions return ps_status; on failure ps_last_error() describes the
 *    offending field;
 *  - structured inputs and outputs are JSON strings in the library's file
 *    formats; strings returned through char** are owned by the caller and
 *    released with ps_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PS_API __declspec(dllexport)
#else
#define PS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ps_status {
  PS_OK = 0,
  PS_ERR_VALIDATION = 1, /* precondition or format violation */
  PS_ERR_IO = 2,         /* file or JSON parse failure */
  PS_ERR_INTERNAL = 3
} ps_status;

typedef struct ps_path ps_path;
typedef struct ps_time_change ps_time_change;
typedef struct ps_family ps_family;
typedef struct ps_base ps_base;
typedef struct ps_measure ps_measure;
typedef struct ps_ensemble ps_ensemble;

PS_API const char* ps_last_error(void);
PS_API void ps_string_free(char* s);

/* --- paths ---------------------------------------------------------------- */

PS_API ps_status ps_path_from_json(const char* json, ps_path** out);
PS_API ps_status ps_path_to_json(const ps_path* path, char** out_json);
PS_API void ps_path_free(ps_path* path);

/* right-continuous evaluation / left limit; coords written into out (size cap),
 * dimension reported via out_dim */
PS_API ps_status ps_path_eval(const ps_path* path, double t, double* out, int cap, int* out_dim);
PS_API ps_status ps_path_left_limit(const ps_path* path, double t, double* out, int cap, int* out_dim);
/* left-jump times under the metric (JSON spec, NULL for euclidean) */
PS_API ps_status ps_path_jump_times(const ps_path* path, const char* metric_json, double tol, double* out, int cap,
                                    int* out_count);
/* x(t) on [0,u], held at x(u) on (u, u+1] */
PS_API ps_status ps_path_restrict_extend(const ps_path* path, double u, ps_path** out);

/* --- time changes ----------------------------------------------------------- */

PS_API ps_status ps_time_change_from_json(const char* json, ps_time_change** out);
PS_API void ps_time_change_free(ps_time_change* tc);
/* |||lambda||| = sup |ln chord slope| */
PS_API ps_status ps_time_change_norm(const ps_time_change* tc, double* out);
PS_API ps_status ps_compose_time_change(const ps_path* path, const ps_time_change* tc, ps_path** out);

/* --- Skorokhod distances ------------------------------------------------------ */

/* options_json: {"matching_depth":..,"refine_grid":..,"tol":..} or NULL */
PS_API ps_status ps_sko_dist(const ps_path* x, const ps_path* y, const char* metric_json, const char* options_json,
                             char** out_report_json);
PS_API ps_status ps_modulus_w_prime(const ps_path* path, const char* metric_json, double delta, double T,
                                    double* out);
PS_API ps_status ps_sup_band_dist(const ps_path* x, const ps_path* y, double a, double b, const char* metric_json,
                                  double* out);

/* --- function families --------------------------------------------------------- */

PS_API ps_status ps_family_from_json(const char* json, ps_family** out);
PS_API void ps_family_free(ps_family* family);
PS_API ps_status ps_family_size(const ps_family* family, int* out);
/* rho_D between two points given as JSON coordinate arrays */
PS_API ps_status ps_family_rho(const ps_family* family, const char* x_json, const char* y_json, double* out);
/* closure: mode in {ae, ac, mc, agQ}; returns the closed family as JSON */
PS_API ps_status ps_family_closure(const ps_family* family, const char* mode, int max_terms, int max_factors,
                                   char** out_json);

/* --- replication ------------------------------------------------------------------ */

PS_API ps_status ps_base_build(const char* base_json, ps_base** out);
PS_API void ps_base_free(ps_base* base);
PS_API ps_status ps_base_embed(const ps_base* base, const char* point_json, double* out, int cap, int* out_dim);
PS_API ps_status ps_base_rho_hat(const ps_base* base, const double* p, const double* q, int dim, double* out);

PS_API ps_status ps_measure_from_json(const char* json, ps_measure** out);
PS_API ps_status ps_measure_to_json(const ps_measure* mu, char** out_json);
PS_API void ps_measure_free(ps_measure* mu);
PS_API ps_status ps_measure_total_mass(const ps_measure* mu, double* out);
/* integral of a scalar function (function JSON constructor record) */
PS_API ps_status ps_measure_integral(const ps_measure* mu, const char* function_json, double* out);
PS_API ps_status ps_replica_measure(const ps_base* base, const ps_measure* mu, ps_measure** out);

/* --- ensembles ---------------------------------------------------------------------- */

PS_API ps_status ps_ensemble_simulate(const char* sampler_config_json, int workers, ps_ensemble** out);
PS_API ps_status ps_ensemble_from_json(const char* json, ps_ensemble** out);
PS_API ps_status ps_ensemble_to_json(const ps_ensemble* ens, char** out_json);
PS_API void ps_ensemble_free(ps_ensemble* ens);
PS_API ps_status ps_band_prob(const ps_ensemble* ens, double a, double b, double T, double* out_estimate,
                              double* out_stderr);
PS_API ps_status ps_rap(const ps_ensemble* ens, double T, uint64_t seed, ps_ensemble** out);

/* --- subcommands ---------------------------------------------------------------------- */

/* command in {dist, modulus, tightness, fdc, replicate, simulate, report};
 * config/report JSON as documented in the README */
PS_API ps_status ps_run_command(const char* command, const char* config_json, char** out_report_json);
/* flatten a JSON report into the CSV emission */
PS_API ps_status ps_report_to_csv(const char* report_json, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* PATHSPACE_H */
