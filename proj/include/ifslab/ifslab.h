/* C interface to the ifslab library.
 *
 * Every function returns an ifslab_status; on failure the message is
 * available from ifslab_last_error() on the same thread. Handles are opaque
 * and owned by the caller, who releases them with the matching _free
 * function (which accepts NULL). Symbols are 1-based. */
#ifndef IFSLAB_H
#define IFSLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define IFSLAB_API __declspec(dllexport)
#else
#define IFSLAB_API __attribute__((visibility("default")))
#endif

typedef enum ifslab_status {
    IFSLAB_OK = 0,
    IFSLAB_E_INVALID_ALPHABET = 1,
    IFSLAB_E_INDEX = 2,
    IFSLAB_E_DOMAIN = 3,
    IFSLAB_E_MALFORMED_INTERVAL = 4,
    IFSLAB_E_EMPTY = 5,
    IFSLAB_E_PARAMETER = 6,
    IFSLAB_E_OVERFLOW = 7,
    IFSLAB_E_PRECONDITION = 8,
    IFSLAB_E_STRUCTURE = 9,
    IFSLAB_E_CONVERGENCE = 10,
    IFSLAB_E_DEGENERACY = 11,
    IFSLAB_E_UNSUPPORTED = 12,
    IFSLAB_E_SHAPE = 13,
    IFSLAB_E_USAGE = 14,
    IFSLAB_E_BUDGET = 15,
    IFSLAB_E_DEGENERATE_OUTPUT = 16,
    IFSLAB_E_CONSTRUCTION = 17,
    IFSLAB_E_IO = 18,
    IFSLAB_E_INTERNAL = 99
} ifslab_status;

typedef struct ifslab_map ifslab_map;
typedef struct ifslab_ifs ifslab_ifs;
typedef struct ifslab_set ifslab_set;
typedef struct ifslab_matrix ifslab_matrix;
typedef struct ifslab_stream ifslab_stream;
typedef struct ifslab_measure ifslab_measure;
typedef struct ifslab_hat ifslab_hat;

IFSLAB_API const char* ifslab_last_error(void);
IFSLAB_API const char* ifslab_status_name(int status);

/* ---- maps and IFSs ---- */

/* Piecewise-linear map through n >= 2 vertices with increasing x. */
IFSLAB_API int ifslab_map_vertices(const double* xs, const double* ys, size_t n, ifslab_map** out);
/* a x^2 + b x + c on [lo, hi]; must be monotone there. */
IFSLAB_API int ifslab_map_quadratic(double lo, double hi, double a, double b, double c, ifslab_map** out);
IFSLAB_API void ifslab_map_free(ifslab_map* m);

IFSLAB_API int ifslab_ifs_new(double lo, double hi, const ifslab_map* const* maps, size_t k, const char* name,
                              ifslab_ifs** out);
IFSLAB_API int ifslab_ifs_preset(const char* name, ifslab_ifs** out);
IFSLAB_API void ifslab_ifs_free(ifslab_ifs* f);
/* Newline-separated preset names; the pointer stays valid for the process. */
IFSLAB_API const char* ifslab_preset_names(void);
IFSLAB_API int ifslab_ifs_size(const ifslab_ifs* f, int* k);
IFSLAB_API int ifslab_ifs_domain(const ifslab_ifs* f, double* lo, double* hi);
IFSLAB_API int ifslab_ifs_eval(const ifslab_ifs* f, int symbol, double x, double* y);

/* ---- interval sets ---- */

IFSLAB_API int ifslab_set_new(double dom_lo, double dom_hi, const double* los, const double* his, size_t n,
                              ifslab_set** out);
IFSLAB_API int ifslab_set_whole(double dom_lo, double dom_hi, ifslab_set** out);
IFSLAB_API void ifslab_set_free(ifslab_set* s);
IFSLAB_API int ifslab_set_count(const ifslab_set* s, size_t* n);
IFSLAB_API int ifslab_set_part(const ifslab_set* s, size_t i, double* lo, double* hi);
IFSLAB_API int ifslab_set_domain(const ifslab_set* s, double* lo, double* hi);
IFSLAB_API int ifslab_set_measure(const ifslab_set* s, double* m);
IFSLAB_API int ifslab_set_diam(const ifslab_set* s, double* d);
IFSLAB_API int ifslab_hausdorff(const ifslab_set* a, const ifslab_set* b, double* d);
IFSLAB_API int ifslab_set_unite(const ifslab_set* a, const ifslab_set* b, ifslab_set** out);
IFSLAB_API int ifslab_set_fatten(const ifslab_set* a, double eps, ifslab_set** out);
/* Closes gaps no wider than max_gap. */
IFSLAB_API int ifslab_set_bridge_gaps(const ifslab_set* a, double max_gap, ifslab_set** out);

/* ---- set dynamics ---- */

IFSLAB_API int ifslab_bh_apply(const ifslab_ifs* f, const ifslab_set* a, ifslab_set** out);
IFSLAB_API int ifslab_star_set(const ifslab_ifs* f, const ifslab_set* a, double tol, int max_iter, ifslab_set** out,
                               int* iterations, int* converged);
IFSLAB_API int ifslab_word_image(const ifslab_ifs* f, const int* word, size_t len, double* lo, double* hi);
IFSLAB_API int ifslab_fibre_approx(const ifslab_ifs* f, const ifslab_stream* s, int depth, ifslab_set** out);
IFSLAB_API int ifslab_lipschitz_exact(const ifslab_ifs* f, const int* word, size_t len, double* lip);

typedef struct ifslab_target_result {
    ifslab_set* atoms;     /* owned by the caller */
    ifslab_set* undecided; /* owned by the caller */
    int complete;
    int budget_exhausted;
    int depth_reached;
    size_t atom_words;
} ifslab_target_result;

/* budget_seconds <= 0 means no wall-clock limit; max_pending 0 keeps the default. */
IFSLAB_API int ifslab_target_approx(const ifslab_ifs* f, double tol, int max_depth, size_t max_pending,
                                    double budget_seconds, ifslab_target_result* out);

/* *found = 0 when no word up to max_depth qualifies. */
IFSLAB_API int ifslab_weakly_hyperbolic_witness(const ifslab_ifs* f, double tol, int max_depth, int* found,
                                                int* word, size_t capacity, size_t* len);

typedef enum ifslab_conley_verdict {
    IFSLAB_CONLEY_ATTRACTS = 0,
    IFSLAB_CONLEY_ESCAPES = 1,
    IFSLAB_CONLEY_INCONCLUSIVE = 2
} ifslab_conley_verdict;

IFSLAB_API int ifslab_conley_probe(const ifslab_ifs* f, const ifslab_set* a, double eps, double tol, int max_iter,
                                   int* verdict, ifslab_set** residual, double* distance, int* iterations);
IFSLAB_API int ifslab_stability_probe(const ifslab_ifs* f, const ifslab_set* a, double v_eps, double v0_eps,
                                      int n_iter, int* stable);
IFSLAB_API int ifslab_invariance_check(const ifslab_ifs* f, const ifslab_set* a, double tol, int* invariant);
IFSLAB_API int ifslab_common_fixed_points(const ifslab_ifs* f, double tol, int grid_n, ifslab_set** out);

/* ---- symbol streams ---- */

IFSLAB_API int ifslab_stream_disjunctive(int k, ifslab_stream** out);
IFSLAB_API int ifslab_stream_constant(int k, int symbol, ifslab_stream** out);
IFSLAB_API int ifslab_stream_periodic(int k, const int* word, size_t len, ifslab_stream** out);
IFSLAB_API int ifslab_stream_bernoulli(const double* weights, size_t k, uint64_t seed, ifslab_stream** out);
IFSLAB_API void ifslab_stream_free(ifslab_stream* s);
IFSLAB_API int ifslab_stream_at(const ifslab_stream* s, size_t n, int* symbol);

/* ---- matrices and chains ---- */

IFSLAB_API int ifslab_matrix_new(int k, const double* entries, ifslab_matrix** out);
IFSLAB_API int ifslab_matrix_bernoulli(const double* weights, size_t k, ifslab_matrix** out);
IFSLAB_API int ifslab_matrix_read_csv(const char* path, ifslab_matrix** out);
IFSLAB_API void ifslab_matrix_free(ifslab_matrix* p);
IFSLAB_API int ifslab_matrix_size(const ifslab_matrix* p, int* k);
/* Row-major k*k entries into out. */
IFSLAB_API int ifslab_matrix_entries(const ifslab_matrix* p, double* out, size_t capacity);
IFSLAB_API int ifslab_stationary_vector(const ifslab_matrix* p, double* out, size_t capacity);
IFSLAB_API int ifslab_is_irreducible(const ifslab_matrix* p, int* result);
IFSLAB_API int ifslab_is_primitive(const ifslab_matrix* p, int* result);
IFSLAB_API int ifslab_inverse_matrix(const ifslab_matrix* p, const double* pbar, size_t k, ifslab_matrix** out);

/* *found = 0 when no pair exists up to max_depth. Words go to u and v. */
IFSLAB_API int ifslab_split_check(const ifslab_ifs* f, const ifslab_matrix* p, const double* pbar, double j_lo,
                                  double j_hi, int max_depth, int* found, int* u, size_t* u_len, int* v,
                                  size_t* v_len, size_t capacity);
IFSLAB_API int ifslab_separability_check(const ifslab_ifs* f, double j_lo, double j_hi, int max_depth, int* found,
                                         int* u, size_t* u_len, int* v, size_t* v_len, size_t capacity);
IFSLAB_API int ifslab_rigidity_check(const ifslab_ifs* f, const ifslab_matrix* p, const double* pbar, int symbol,
                                     double tol, int max_depth, int* split_on_symbol);

/* ---- measures ---- */

IFSLAB_API int ifslab_measure_new(double lo, double hi, const double* masses, size_t n, ifslab_measure** out);
IFSLAB_API int ifslab_measure_uniform(double lo, double hi, size_t n, ifslab_measure** out);
IFSLAB_API int ifslab_measure_dirac(double lo, double hi, size_t n, double x, ifslab_measure** out);
IFSLAB_API void ifslab_measure_free(ifslab_measure* m);
IFSLAB_API int ifslab_measure_bins(const ifslab_measure* m, size_t* n);
IFSLAB_API int ifslab_measure_masses(const ifslab_measure* m, double* out, size_t capacity);
IFSLAB_API int ifslab_measure_moments(const ifslab_measure* m, double* mean, double* variance);
IFSLAB_API int ifslab_markov_step(const ifslab_ifs* f, const double* weights, size_t k, const ifslab_measure* mu,
                                  ifslab_measure** out);
IFSLAB_API int ifslab_w1_distance(const ifslab_measure* mu, const ifslab_measure* nu, double* d);
IFSLAB_API int ifslab_support_estimate(const ifslab_measure* mu, double mass_tol, ifslab_set** out);

/* Bernoulli source: sequences i.i.d. with the given weights. */
IFSLAB_API int ifslab_coding_pushforward(const ifslab_ifs* f, const double* weights, size_t k, size_t n_samples,
                                         int prefix_len, double tol, size_t n_bins, uint64_t seed, int workers,
                                         ifslab_measure** out, double* unresolved_fraction);
/* Markov source: the chain q started from initial; the result is a hat measure. */
IFSLAB_API int ifslab_coding_pushforward_markov(const ifslab_ifs* f, const ifslab_matrix* q, const double* initial,
                                                size_t n_samples, int prefix_len, double tol, size_t n_bins,
                                                uint64_t seed, int workers, ifslab_hat** out,
                                                double* unresolved_fraction);

IFSLAB_API int ifslab_hat_uniform(double lo, double hi, size_t n_bins, const double* weights, size_t k,
                                  ifslab_hat** out);
IFSLAB_API int ifslab_hat_dirac(double lo, double hi, size_t n_bins, int k, int symbol, double x, ifslab_hat** out);
IFSLAB_API void ifslab_hat_free(ifslab_hat* h);
IFSLAB_API int ifslab_hat_shape(const ifslab_hat* h, int* k, size_t* n_bins);
IFSLAB_API int ifslab_hat_section(const ifslab_hat* h, int symbol, double* out, size_t capacity);
IFSLAB_API int ifslab_hat_section_masses(const ifslab_hat* h, double* out, size_t capacity);
IFSLAB_API int ifslab_hat_marginal(const ifslab_hat* h, ifslab_measure** out);
IFSLAB_API int ifslab_generalized_markov_step(const ifslab_ifs* f, const ifslab_matrix* p, const ifslab_hat* h,
                                              ifslab_hat** out);
IFSLAB_API int ifslab_hat_w1_distance(const ifslab_hat* a, const ifslab_hat* b, double* d);

/* ---- chaos game ---- */

/* Writes n orbit points into out (capacity >= n). */
IFSLAB_API int ifslab_orbit(const ifslab_ifs* f, double x0, const ifslab_stream* s, size_t n, double* out);
IFSLAB_API int ifslab_tail_cover(const double* points, size_t n, double dom_lo, double dom_hi, size_t from,
                                 double resolution, ifslab_set** out);

#ifdef __cplusplus
}
#endif

#endif
