/* C interface to the discrete nonlinear Fourier transform library. */

#ifndef NLFT_H
#define NLFT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum NlftStatus {
  NLFT_STATUS_OK = 0,
  // A required pointer argument was null.
  NLFT_STATUS_NULL_POINTER = 1,
  // An argument was out of range or inconsistent.
  NLFT_STATUS_INVALID_ARGUMENT = 2,
  // The input data violates the type's invariants.
  NLFT_STATUS_INVALID_INPUT = 3,
  // The input is valid but not in the transform's image.
  NLFT_STATUS_NOT_IN_IMAGE = 4,
  // The samples do not come from a constant-mass configuration.
  NLFT_STATUS_NOT_CONST_MASS = 5,
  // A brute-force size cap was exceeded.
  NLFT_STATUS_TOO_LARGE = 6,
  // A numerical floor was hit (singular matrix, vanishing read-off).
  NLFT_STATUS_NUMERICAL_FAILURE = 7,
  // The caller-provided buffer is too small.
  NLFT_STATUS_BUFFER_TOO_SMALL = 8,
} NlftStatus;

// Dirac comb with strictly increasing poles in (0, 1).
typedef struct NlftComb NlftComb;

// Matrix-valued exponential polynomial (the comb transform's value).
typedef struct NlftExpMat NlftExpMat;

// Sampled matrices of the uniform-grid transform at z = 0, ..., N-1.
typedef struct NlftGrid NlftGrid;

// Tolerance bundle; pass null wherever accepted to use the defaults
// (1e-9, 1e-12, 1e-8, 1e-7).
typedef struct NlftTolerances {
  double eps_f;
  double eps_c;
  double eps_peel;
  double eps_member;
} NlftTolerances;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a comb from parallel arrays of pole positions and weight parts.
//
// # Safety
// `x`, `re`, `im` must point to `len` readable doubles; `out` must be a
// valid location for a handle.
enum NlftStatus nlft_comb_new(const double *x,
                              const double *re,
                              const double *im,
                              size_t len,
                              struct NlftComb **out);

// # Safety
// `ptr` must have come from `nlft_comb_new` or `nlft_inverse_comb` and not
// have been freed.
void nlft_comb_free(struct NlftComb *ptr);

// # Safety
// `ptr` must be a live comb handle.
size_t nlft_comb_len(const struct NlftComb *ptr);

// Reads one pole.
//
// # Safety
// `ptr` must be a live comb handle; output pointers must be writable.
enum NlftStatus nlft_comb_get(const struct NlftComb *ptr,
                              size_t index,
                              double *x,
                              double *re,
                              double *im);

// Transforms a comb; `reduced` drops the leading phase factor (the form the
// inverse expects).
//
// # Safety
// `comb` must be a live handle; `out` must be writable.
enum NlftStatus nlft_forward_comb(const struct NlftComb *comb,
                                  bool reduced,
                                  struct NlftExpMat **out);

// Builds an exponential-polynomial matrix from term arrays (frequencies
// with complex coefficients for the diagonal and off-diagonal entries).
// Terms are normalized with the default tolerances.
//
// # Safety
// The six array pointers must match their length arguments; `out` must be
// writable.
enum NlftStatus nlft_expmat_new(const double *a_freq,
                                const double *a_re,
                                const double *a_im,
                                size_t a_len,
                                const double *b_freq,
                                const double *b_re,
                                const double *b_im,
                                size_t b_len,
                                struct NlftExpMat **out);

// # Safety
// `ptr` must have come from this library and not have been freed.
void nlft_expmat_free(struct NlftExpMat *ptr);

// Term count of the diagonal entry.
//
// # Safety
// `ptr` must be a live handle.
size_t nlft_expmat_len_a(const struct NlftExpMat *ptr);

// Term count of the off-diagonal entry.
//
// # Safety
// `ptr` must be a live handle.
size_t nlft_expmat_len_b(const struct NlftExpMat *ptr);

// Reads one diagonal term.
//
// # Safety
// `ptr` must be a live handle; output pointers must be writable.
enum NlftStatus nlft_expmat_term_a(const struct NlftExpMat *ptr,
                                   size_t index,
                                   double *freq,
                                   double *re,
                                   double *im);

// Reads one off-diagonal term.
//
// # Safety
// `ptr` must be a live handle; output pointers must be writable.
enum NlftStatus nlft_expmat_term_b(const struct NlftExpMat *ptr,
                                   size_t index,
                                   double *freq,
                                   double *re,
                                   double *im);

// Evaluates the matrix at a real spectral point.
//
// # Safety
// `ptr` must be a live handle; output pointers must be writable.
enum NlftStatus nlft_expmat_eval(const struct NlftExpMat *ptr,
                                 double z,
                                 double *a_re,
                                 double *a_im,
                                 double *b_re,
                                 double *b_im);

// Layer-peeling inversion of a reduced comb transform with at most `n_max`
// poles.
//
// # Safety
// `m` must be a live handle; `tol` may be null; `out` must be writable.
enum NlftStatus nlft_inverse_comb(const struct NlftExpMat *m,
                                  size_t n_max,
                                  const struct NlftTolerances *tol,
                                  struct NlftComb **out);

// Membership test for the comb transform's image with exactly `n` poles.
//
// # Safety
// `m` must be a live handle; `tol` may be null; `member` must be writable.
enum NlftStatus nlft_membership_comb(const struct NlftExpMat *m,
                                     size_t n,
                                     const struct NlftTolerances *tol,
                                     bool *member);

// Transforms a uniform-grid signal given as parallel real/imaginary arrays.
//
// # Safety
// `re`, `im` must point to `len` readable doubles; `out` must be writable.
enum NlftStatus nlft_forward_grid(const double *re,
                                  const double *im,
                                  size_t len,
                                  struct NlftGrid **out);

// Builds a grid from per-sample matrix entries.
//
// # Safety
// The four array pointers must point to `len` readable doubles; `out` must
// be writable.
enum NlftStatus nlft_grid_new(const double *a_re,
                              const double *a_im,
                              const double *b_re,
                              const double *b_im,
                              size_t len,
                              struct NlftGrid **out);

// # Safety
// `ptr` must have come from this library and not have been freed.
void nlft_grid_free(struct NlftGrid *ptr);

// # Safety
// `ptr` must be a live handle.
size_t nlft_grid_len(const struct NlftGrid *ptr);

// Reads the sample at one grid point.
//
// # Safety
// `ptr` must be a live handle; output pointers must be writable.
enum NlftStatus nlft_grid_sample(const struct NlftGrid *ptr,
                                 size_t z,
                                 double *a_re,
                                 double *a_im,
                                 double *b_re,
                                 double *b_im);

// Recovers the signal behind a sampled transform into caller buffers of
// length `nlft_grid_len`.
//
// # Safety
// `g` must be a live handle; `tol` may be null; `out_re`, `out_im` must
// point to `nlft_grid_len(g)` writable doubles.
enum NlftStatus nlft_inverse_grid(const struct NlftGrid *g,
                                  const struct NlftTolerances *tol,
                                  double *out_re,
                                  double *out_im);

// Membership test for the grid transform's image.
//
// # Safety
// `g` must be a live handle; `tol` may be null; `member` must be writable.
enum NlftStatus nlft_membership_grid(const struct NlftGrid *g,
                                     const struct NlftTolerances *tol,
                                     bool *member);

// Recovers the gap vector of a constant-mass configuration from `m` dual
// transform samples (entries given as parallel arrays) into a caller buffer
// of `m` doubles.
//
// # Safety
// The four array pointers must point to `m` readable doubles; `tol` may be
// null; `xi_out` must point to `m` writable doubles.
enum NlftStatus nlft_dual_inverse_const_mass(const double *a_re,
                                             const double *a_im,
                                             const double *b_re,
                                             const double *b_im,
                                             size_t m,
                                             const struct NlftTolerances *tol,
                                             double *xi_out);

// Writes the exact stratum size C(l, k-1)·C(N-l-1, k-1) as a NUL-terminated
// decimal string.
//
// # Safety
// `buf` must point to `buf_len` writable bytes.
enum NlftStatus nlft_stratum_count(size_t n, size_t k, size_t l, char *buf, size_t buf_len);

// Operation counts of the two inversion strategies at size `n`.
//
// # Safety
// Output pointers must be writable.
enum NlftStatus nlft_complexity_report(size_t n,
                                       double *full,
                                       double *modified,
                                       double *difference);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NLFT_H */
