/* spintomo: normalized non-redundant tomographic schemes for spin states.
 *
 * C interface to the spintomo shared library. All functionality is reached
 * through two opaque handle types (single spin-1/2 schemes and their tensor
 * compositions) plus plain-array payloads:
 *
 *   - complex dim x dim matrices travel as double[2*dim*dim], row-major,
 *     interleaved re,im;
 *   - Bloch vectors travel as double[3] (x, y, z), quadruples as double[12];
 *   - tomograms as double[count], counts as long long[count].
 *
 * Every fallible call returns spintomo_status; SPINTOMO_OK is 0. On failure
 * the thread-local message of spintomo_last_error() describes the cause and
 * out-parameters are left untouched. Strings returned through char** are
 * heap copies owned by the caller; release them with spintomo_string_free().
 *
 * Handles are immutable after construction (except set_label) and may be
 * shared across threads for concurrent reads.
 */

#ifndef SPINTOMO_H
#define SPINTOMO_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SPINTOMO_API __declspec(dllexport)
#else
#define SPINTOMO_API __attribute__((visibility("default")))
#endif

typedef enum spintomo_status {
    SPINTOMO_OK = 0,
    SPINTOMO_ERR_INVALID_ARGUMENT = 1,
    SPINTOMO_ERR_DIMENSION_MISMATCH = 2,
    SPINTOMO_ERR_NOT_HERMITIAN = 3,
    SPINTOMO_ERR_EIG_NO_CONVERGENCE = 4,
    SPINTOMO_ERR_COPLANAR_TRIPLE = 5,
    SPINTOMO_ERR_COPLANAR_QUADRUPLE = 6,
    SPINTOMO_ERR_FOURTH_VECTOR_TOO_LONG = 7,
    SPINTOMO_ERR_DEGENERATE_FOLD = 8,
    SPINTOMO_ERR_EXHAUSTED_ATTEMPTS = 9,
    SPINTOMO_ERR_NOT_PURE = 10,
    SPINTOMO_ERR_LENGTH_EXCEEDS_ONE = 11,
    SPINTOMO_ERR_SINGULAR_MATRIX = 12,
    SPINTOMO_ERR_SINGULAR_TRANSFER_MATRIX = 13,
    SPINTOMO_ERR_NON_PHYSICAL_STATE = 14,
    SPINTOMO_ERR_MATERIALIZE_LIMIT = 15,
    SPINTOMO_ERR_UNKNOWN_PRESET = 16,
    SPINTOMO_ERR_SCHEMA_VERSION = 17,
    SPINTOMO_ERR_VALIDATION = 18,
    SPINTOMO_ERR_PARSE = 19,
    SPINTOMO_ERR_IO = 20,
    SPINTOMO_ERR_INTERNAL = 99
} spintomo_status;

/* Component selector for spintomo_scheme_component / spintomo_tensor_component. */
typedef enum spintomo_component_kind {
    SPINTOMO_DEQUANTIZER = 0,
    SPINTOMO_QUANTIZER = 1
} spintomo_component_kind;

typedef struct spintomo_scheme spintomo_scheme;
typedef struct spintomo_tensor spintomo_tensor;

/* Library version, e.g. "1.0.0". Static storage; do not free. */
SPINTOMO_API const char* spintomo_version(void);

/* Message of the most recent failure on the calling thread; "" after any
 * successful call. Valid until the next spintomo call on the same thread. */
SPINTOMO_API const char* spintomo_last_error(void);

SPINTOMO_API void spintomo_string_free(char* s);

/* ---- scheme construction ------------------------------------------------ */

/* vectors = e1..e4 concatenated (12 doubles). The quadruple must close to
 * zero and have all four coplanarity determinants away from zero. */
SPINTOMO_API spintomo_status spintomo_scheme_from_vectors(const double* vectors,
                                                          spintomo_scheme** out);

/* vectors = e1..e3 (9 doubles); e4 = -(e1+e2+e3) is filled in. */
SPINTOMO_API spintomo_status spintomo_scheme_from_triple(const double* vectors,
                                                         spintomo_scheme** out);

/* "example1" (pure) or "example2" (mixed). */
SPINTOMO_API spintomo_status spintomo_scheme_preset(const char* name, spintomo_scheme** out);

/* mode: "pure", "mixed" or "heterogeneous". Deterministic per seed. */
SPINTOMO_API spintomo_status spintomo_scheme_random(uint64_t seed, const char* mode,
                                                    spintomo_scheme** out);

/* Bends a planar quadrilateral (vertices = 4 x,y pairs, bypass order) by
 * fold_angle about a diagonal (0 = V0V2, 1 = V1V3) and builds the scheme on
 * the resulting edges. */
SPINTOMO_API spintomo_status spintomo_scheme_fold(const double* vertices, int diagonal,
                                                  double fold_angle, spintomo_scheme** out);

SPINTOMO_API spintomo_status spintomo_scheme_load(const char* path, spintomo_scheme** out);
SPINTOMO_API spintomo_status spintomo_scheme_save(const spintomo_scheme* s, const char* path,
                                                  int include_matrices);
SPINTOMO_API spintomo_status spintomo_scheme_from_json(const char* text, spintomo_scheme** out);
SPINTOMO_API spintomo_status spintomo_scheme_to_json(const spintomo_scheme* s,
                                                     int include_matrices, char** out_json);
SPINTOMO_API spintomo_status spintomo_scheme_set_label(spintomo_scheme* s, const char* label);
SPINTOMO_API void spintomo_scheme_free(spintomo_scheme* s);

/* ---- scheme inspection --------------------------------------------------- */

SPINTOMO_API spintomo_status spintomo_scheme_label(const spintomo_scheme* s, char** out_label);

/* out_vectors = 12 doubles, e1..e4. */
SPINTOMO_API spintomo_status spintomo_scheme_vectors(const spintomo_scheme* s,
                                                     double* out_vectors);

/* k in 1..4; out_matrix = 8 doubles (2x2 interleaved). */
SPINTOMO_API spintomo_status spintomo_scheme_component(const spintomo_scheme* s, int k,
                                                       spintomo_component_kind kind,
                                                       double* out_matrix);

/* Combined geometric validation + operator identity report as JSON; the
 * top-level "pass" field aggregates every gate. */
SPINTOMO_API spintomo_status spintomo_scheme_report_json(const spintomo_scheme* s,
                                                         char** out_json);

/* ---- single-qubit maps --------------------------------------------------- */

/* w_j = Tr{rho U_j}. rho = 8 doubles, must be a physical density matrix. */
SPINTOMO_API spintomo_status spintomo_forward(const spintomo_scheme* s, const double* rho,
                                              double* out_w);

/* rho = sum_j w_j D_j. Inverse is linear: no physicality gate on w. */
SPINTOMO_API spintomo_status spintomo_inverse(const spintomo_scheme* s, const double* w,
                                              double* out_rho);

/* Physicality conditions evaluated directly on the tomogram. tol < 0 picks
 * the default 1e-10. out_pass is required; out_json may be NULL. */
SPINTOMO_API spintomo_status spintomo_is_physical(const spintomo_scheme* s, const double* w,
                                                  double tol, int* out_pass, char** out_json);

/* Tr{rho^2} for a dim x dim density matrix (no physicality gate). */
SPINTOMO_API spintomo_status spintomo_purity(const double* rho, int dim, double* out_purity);

/* Eigenvalues of a Hermitian dim x dim matrix, descending (dim <= 64). */
SPINTOMO_API spintomo_status spintomo_eig_hermitian(const double* matrix, int dim,
                                                    double* out_eigs);

/* ---- finite-shot simulation ---------------------------------------------- */

/* One binomial draw per component: out_counts[j] ~ B(shots, w_j). */
SPINTOMO_API spintomo_status spintomo_simulate(const spintomo_scheme* s, const double* rho,
                                               long long shots, uint64_t seed,
                                               long long* out_counts);

/* Linear inversion of empirical frequencies, rescaled to sum 2.
 * truth_rho may be NULL; with it, out_metrics[0] is the Frobenius distance
 * to the round-tripped truth, otherwise NaN. out_metrics[1] is the smallest
 * eigenvalue of the estimate, out_metrics[2] its trace. Any output pointer
 * may be NULL to skip it. */
SPINTOMO_API spintomo_status spintomo_estimate(const spintomo_scheme* s,
                                               const long long* counts, long long shots,
                                               const double* truth_rho, double* out_rho,
                                               double* out_w_hat, double* out_metrics);

/* Deterministic per-trial seed stream (splitmix64 at position index+1). */
SPINTOMO_API uint64_t spintomo_trial_seed(uint64_t seed, uint64_t index);

/* ---- multi-qubit tensor schemes ------------------------------------------ */

/* Composes n factor schemes (handles are copied, caller keeps ownership).
 * materialize_limit <= 0 picks the default (5); n is capped at 6. */
SPINTOMO_API spintomo_status spintomo_tensor_new(const spintomo_scheme* const* factors, int n,
                                                 int materialize_limit, const char* label,
                                                 spintomo_tensor** out);

SPINTOMO_API spintomo_status spintomo_tensor_load(const char* path, spintomo_tensor** out);
SPINTOMO_API spintomo_status spintomo_tensor_save(const spintomo_tensor* t, const char* path,
                                                  int include_matrices);
SPINTOMO_API void spintomo_tensor_free(spintomo_tensor* t);

/* Number of factors, or 0 for NULL. */
SPINTOMO_API int spintomo_tensor_n(const spintomo_tensor* t);

/* j in 1..4^n; out_matrix = 2*dim*dim doubles with dim = 2^n. Dense
 * materialization honours the scheme's materialize_limit. */
SPINTOMO_API spintomo_status spintomo_tensor_component(const spintomo_tensor* t, int j,
                                                       spintomo_component_kind kind,
                                                       double* out_matrix);

/* rho = 2*dim*dim doubles, out_w = 4^n doubles. */
SPINTOMO_API spintomo_status spintomo_tensor_forward(const spintomo_tensor* t,
                                                     const double* rho, double* out_w);
SPINTOMO_API spintomo_status spintomo_tensor_inverse(const spintomo_tensor* t, const double* w,
                                                     double* out_rho);

/* Orthogonality/completeness/normalization report as JSON. exhaustive != 0
 * checks every pair and tuple (n <= 2 only); otherwise `samples` seeded
 * random probes. */
SPINTOMO_API spintomo_status spintomo_tensor_verify_json(const spintomo_tensor* t,
                                                         int exhaustive, uint64_t seed,
                                                         int samples, char** out_json);

/* ---- index maps (1-based, big-endian, first factor most significant) ----- */

SPINTOMO_API spintomo_status spintomo_g_map(int k, int n, int* out_digits);
SPINTOMO_API spintomo_status spintomo_g_inverse(const int* digits, int n, int* out_k);
SPINTOMO_API spintomo_status spintomo_f_map(const int* digits, int n, int* out_j);
SPINTOMO_API spintomo_status spintomo_f_inverse(int j, int n, int* out_digits);

/* ---- state / tomogram / counts files ------------------------------------- */

/* out_rho must hold 2*capacity_dim^2 doubles; fails with
 * SPINTOMO_ERR_DIMENSION_MISMATCH when the stored state is larger. */
SPINTOMO_API spintomo_status spintomo_state_load(const char* path, double* out_rho,
                                                 int capacity_dim, int* out_dim);
SPINTOMO_API spintomo_status spintomo_state_save(const char* path, const double* rho, int dim);

/* out_label may be NULL when the label is not needed. */
SPINTOMO_API spintomo_status spintomo_tomogram_load(const char* path, double* out_w,
                                                    int capacity, int* out_count,
                                                    char** out_label);
SPINTOMO_API spintomo_status spintomo_tomogram_save(const char* path, const double* w, int count,
                                                    const char* label);

SPINTOMO_API spintomo_status spintomo_counts_load(const char* path, long long* out_successes,
                                                  int capacity, int* out_count,
                                                  long long* out_shots, uint64_t* out_seed,
                                                  char** out_label);
SPINTOMO_API spintomo_status spintomo_counts_save(const char* path, const long long* successes,
                                                  int count, long long shots, uint64_t seed,
                                                  const char* label);

/* "scheme", "state", "tomogram", "counts" or "tensor_scheme". */
SPINTOMO_API spintomo_status spintomo_file_kind(const char* path, char** out_kind);

/* ---- whole-library selftest ----------------------------------------------- */

/* Runs every module's seeded property suite; iterations <= 0 picks the
 * default (200). The JSON report lists one entry per suite plus a top-level
 * "pass". */
SPINTOMO_API spintomo_status spintomo_selftest_json(uint64_t seed, int iterations,
                                                    char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* SPINTOMO_H */
