/* C interface to the decomposable-norm laboratory.
 *
 * All functionality is reached through opaque handles and status codes; the
 * library never lets a C++ exception cross this boundary. Handles own their
 * resources and are released with the matching *_free call. String returns
 * stay owned by the handle (or by thread-local storage for
 * declab_last_error) and are valid until the next call on the same handle.
 */
#ifndef DECLAB_H
#define DECLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum declab_status {
  DECLAB_OK = 0,
  DECLAB_ERR_INVALID_ARGUMENT = 1,
  DECLAB_ERR_DIMENSION = 2,
  DECLAB_ERR_NOT_HERMITIAN = 3,
  DECLAB_ERR_NO_CONVERGENCE = 4,
  DECLAB_ERR_INVALID_P = 5,
  DECLAB_ERR_NOT_SQUARE = 6,
  DECLAB_ERR_NOT_A_SUBGROUP = 7,
  DECLAB_ERR_INVALID_GROUP = 8,
  DECLAB_ERR_INVALID_COCYCLE = 9,
  DECLAB_ERR_NOT_DIAGONAL_INPUT = 10,
  DECLAB_ERR_PARSE = 11,
  DECLAB_ERR_IO = 12,
  DECLAB_ERR_SOLVER = 13,
  DECLAB_ERR_ASSERTION = 14,
  DECLAB_ERR_UNKNOWN = 15
} declab_status;

typedef struct declab_matrix declab_matrix;
typedef struct declab_superop declab_superop;
typedef struct declab_group declab_group;
typedef struct declab_report declab_report;

typedef struct declab_options {
  uint64_t seed;
  int trials;       /* 0 = per-suite default */
  int restarts;
  double sdp_tol;
  int sdp_maxiter;
  double tol_scale;
  int quick;
  double p_value;   /* exponent, used when p_is_inf == 0 */
  int p_is_inf;
} declab_options;

void declab_options_init(declab_options* opts);

/* Message for the last failing call on this thread. */
const char* declab_last_error(void);
const char* declab_version(void);

/* ---- matrices ---------------------------------------------------------- */

declab_status declab_matrix_create(int rows, int cols, const double* re,
                                   const double* im, declab_matrix** out);
declab_status declab_matrix_load(const char* path, declab_matrix** out);
declab_status declab_matrix_parse(const char* json_text, declab_matrix** out);
declab_status declab_matrix_save(const declab_matrix* m, const char* path);
void declab_matrix_free(declab_matrix* m);
int declab_matrix_rows(const declab_matrix* m);
int declab_matrix_cols(const declab_matrix* m);
declab_status declab_matrix_get(const declab_matrix* m, int i, int j, double* re,
                                double* im);
declab_status declab_schatten_norm(const declab_matrix* m, const declab_options* opts,
                                   double* out);

/* ---- superoperators ---------------------------------------------------- */

declab_status declab_superop_load(const char* path, declab_superop** out);
declab_status declab_superop_parse(const char* json_text, declab_superop** out);
declab_status declab_superop_save(const declab_superop* t, const char* path);
declab_status declab_superop_identity(int n, declab_superop** out);
declab_status declab_superop_transpose_map(int n, declab_superop** out);
declab_status declab_superop_schur(const declab_matrix* symbol, declab_superop** out);
declab_status declab_superop_fourier(const declab_group* alg, const double* phi_re,
                                     const double* phi_im, declab_superop** out);
void declab_superop_free(declab_superop* t);
int declab_superop_in_dim(const declab_superop* t);
int declab_superop_out_dim(const declab_superop* t);
declab_status declab_superop_apply(const declab_superop* t, const declab_matrix* x,
                                   declab_matrix** out);
declab_status declab_superop_is_cp(const declab_superop* t, double tol, int* cp,
                                   double* min_eigenvalue);

/* ---- norms ------------------------------------------------------------- */

/* v1/v2 receive the witnesses when non-null. */
declab_status declab_dec_norm_inf(const declab_superop* t, const declab_options* opts,
                                  double* value, declab_superop** v1,
                                  declab_superop** v2);
declab_status declab_cb_norm_inf(const declab_superop* t, const declab_options* opts,
                                 double* value);
declab_status declab_dec_norm_commutative(const declab_superop* t,
                                          const declab_options* opts, double* value);
declab_status declab_schur_cb_norm(const declab_matrix* symbol,
                                   const declab_options* opts, double* value);
/* lower bound of ||T (x) Id_{S^p_d}||, p taken from the options */
declab_status declab_pq_norm_lower(const declab_superop* t, const declab_options* opts,
                                   int d, double* value);

/* ---- groups ------------------------------------------------------------ */

declab_status declab_group_load(const char* path, declab_group** out);
declab_status declab_group_parse(const char* json_text, declab_group** out);
declab_status declab_group_cyclic(int n, declab_group** out);
void declab_group_free(declab_group* g);
int declab_group_order(const declab_group* g);

/* ---- experiment suites and reports ------------------------------------- */

/* suite is one of: dec-axioms, projections, cocycle, schur-dec, modulus,
 * property-p, matsaev, truncation, unitary-row. */
declab_status declab_run_suite(const char* suite, const declab_options* opts,
                               declab_report** out);
/* Runs the whole battery; writes report.json, truncation.csv, matsaev.csv
 * into out_dir when out_dir is non-null. */
declab_status declab_run_report(const declab_options* opts, const char* out_dir,
                                declab_report** out);
/* Backend of the dec-norm command: loads a superoperator file, computes the
 * decomposable and completely bounded norms and dumps the witnesses. */
declab_status declab_dec_norm_report(const char* map_path, const declab_options* opts,
                                     const char* out_dir, declab_report** out);

const char* declab_report_json(const declab_report* r);
int declab_report_passed(const declab_report* r);
void declab_report_free(declab_report* r);

#ifdef __cplusplus
}
#endif

#endif /* DECLAB_H */
