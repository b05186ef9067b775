#ifndef TODA_DARBOUX_H
#define TODA_DARBOUX_H

#include <stdint.h>

#if defined(_WIN32)
#  if defined(TODA_DARBOUX_BUILD)
#    define TD_API __declspec(dllexport)
#  else
#    define TD_API __declspec(dllimport)
#  endif
#else
#  define TD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum td_status {
    TD_OK = 0,
    TD_INVALID_ARGUMENT = 1,
    TD_SIZE = 2,
    TD_SINGULAR_LEADING_MINOR = 3,
    TD_SAMPLING_FAILED = 4,
    TD_PEEL_BREAKDOWN = 5,
    TD_TABLE_BREAKDOWN = 6,
    TD_INDEX = 7,
    TD_BLOW_UP = 8,
    TD_INSUFFICIENT_SAMPLES = 9,
    TD_PARSE = 10,
    TD_INTERNAL = 99
} td_status;

typedef enum td_mode { TD_MODE_REAL = 0, TD_MODE_COMPLEX = 1 } td_mode;

typedef enum td_family { TD_FAMILY_RANDOM = 0, TD_FAMILY_FACTORED = 1 } td_family;

typedef struct td_config {
    int p;
    int n;
    double shift_re;
    double shift_im;
    uint64_t seed;
    double dt;
    int steps;
    td_mode mode;
    td_family family;
    int pad;
    double tol_pivot;
    double tol_margin;
    double tol_verify;
    double tol_path;
} td_config;

typedef struct td_matrix td_matrix;
typedef struct td_factorization td_factorization;
typedef struct td_trajectory td_trajectory;

/* p = 1, n = 8, C = 0, seed = 1, dt = 1e-3, steps = 100, real, random. */
TD_API void td_config_default(td_config* config);

TD_API const char* td_status_name(td_status status);

/* Message of the last failure on this thread; empty after a success. */
TD_API const char* td_last_error(void);
/* Offending index of the last failure, -1 when there is none. */
TD_API long td_last_error_index(void);

/* Strings returned through char** outputs are owned by the caller. */
TD_API void td_string_free(char* text);

/* Matrices: J(t0) with optional free parameters attached. */
TD_API td_status td_matrix_random(int p, int n, uint64_t seed, td_mode mode, td_matrix** out);
/* Built from config: family, p, seed, mode, shift; `size` rows. */
TD_API td_status td_matrix_instance(const td_config* config, int size, td_matrix** out);
TD_API td_status td_matrix_from_json(const char* json, td_matrix** out);
TD_API td_status td_matrix_to_json(const td_matrix* matrix, char** out);
TD_API int td_matrix_p(const td_matrix* matrix);
TD_API int td_matrix_size(const td_matrix* matrix);
TD_API td_status td_matrix_entry(const td_matrix* matrix, int i, int j, double* re, double* im);
TD_API void td_matrix_free(td_matrix* matrix);

/* LU of J - C I, peeling, and the gamma table. Uses the matrix's own
   parameters when it carries them, otherwise samples with config->seed. */
TD_API td_status td_factorize(const td_matrix* matrix, const td_config* config, td_factorization** out);
/* {config, params, factors, table, reports, pass} */
TD_API td_status td_factorization_to_json(const td_factorization* fact, char** out);
TD_API td_status td_factorization_residuals(const td_factorization* fact, double* lu, double* darboux,
                                            double* uniqueness, int* all_pass);
TD_API int td_factorization_gamma_count(const td_factorization* fact);
/* gamma_n, n >= 1 */
TD_API td_status td_factorization_gamma(const td_factorization* fact, long n, double* re, double* im);
/* J^(i) from the factor product; backlund_residual compares it with the
   closed form; window is the number of certified rows. */
TD_API td_status td_transform(const td_factorization* fact, int i, td_matrix** out, double* backlund_residual,
                              int* window);
TD_API void td_factorization_free(td_factorization* fact);

/* Trajectories */
TD_API td_status td_evolve_toda(const td_matrix* initial, double dt, int steps, td_trajectory** out);
TD_API td_status td_evolve_kdv(const td_factorization* fact, double dt, int steps, td_trajectory** out);
TD_API int td_trajectory_samples(const td_trajectory* traj);
TD_API td_status td_trajectory_to_csv(const td_trajectory* traj, char** out);
TD_API td_status td_trajectory_verify(const td_trajectory* traj, double tol, char** report_json, int* pass);
TD_API void td_trajectory_free(td_trajectory* traj);

/* Commuting-diagram check for a window of config->n rows.
   report_json: {config, params, reports, pass}. */
TD_API td_status td_verify(const td_config* config, char** report_json, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif
