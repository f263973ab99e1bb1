#ifndef ALPHA_HARMONIC_H
#define ALPHA_HARMONIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum AhStatus {
  AH_STATUS_OK = 0,
  AH_STATUS_NULL_POINTER = 1,
  // Input outside the mathematical domain (α ≤ −1, |z| ≥ 1, p < 1, …).
  AH_STATUS_DOMAIN = 2,
  AH_STATUS_NOT_APPLICABLE = 3,
  AH_STATUS_INVALID_ARGUMENT = 4,
  AH_STATUS_NON_FINITE = 5,
  AH_STATUS_PRECONDITION = 6,
  AH_STATUS_IO = 7,
  AH_STATUS_PARSE = 8,
  // A Rust panic was caught at the boundary; the library state is intact.
  AH_STATUS_PANIC = 9,
} AhStatus;

typedef enum AhEngine {
  AH_ENGINE_SERIES = 0,
  AH_ENGINE_QUADRATURE = 1,
} AhEngine;

typedef enum AhTarget {
  AH_TARGET_F = 0,
  AH_TARGET_DZ = 1,
  AH_TARGET_DBAR = 2,
  AH_TARGET_DBAR_SCALED = 3,
  AH_TARGET_DTHETA = 4,
} AhTarget;

typedef enum AhWhich {
  AH_WHICH_LEMMA31 = 0,
  AH_WHICH_LEMMA32 = 1,
  AH_WHICH_THM33 = 2,
  AH_WHICH_COR34 = 3,
} AhWhich;

// Opaque boundary data (a trigonometric polynomial).
typedef struct AhBoundary AhBoundary;

// Opaque α-harmonic extension of boundary data.
typedef struct AhFunction AhFunction;

typedef struct AhComplex {
  double re;
  double im;
} AhComplex;

typedef struct AhDerivatives {
  struct AhComplex dz;
  struct AhComplex dbar;
  struct AhComplex dtheta;
} AhDerivatives;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer stays
// valid until the next library call on the same thread.
const char *ah_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *ah_version(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void ah_string_free(char *s);

// Boundary data from `len` coefficients c_n = re[i] + i·im[i] at n = ns[i].
//
// # Safety
// The three arrays must hold `len` elements; `out` must be writable.
enum AhStatus ah_boundary_from_coeffs(const int64_t *ns,
                                      const double *re,
                                      const double *im,
                                      size_t len,
                                      struct AhBoundary **out);

// Boundary data from the JSON file schema `{"coeffs": [{"n", "re", "im"}]}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum AhStatus ah_boundary_from_json(const char *json, struct AhBoundary **out);

// Seeded random trigonometric polynomial of the given degree.
//
// # Safety
// `out` must be writable.
enum AhStatus ah_boundary_random(uint64_t seed, size_t degree, struct AhBoundary **out);

// # Safety
// `b` must come from this library and not have been freed. NULL is ignored.
void ah_boundary_free(struct AhBoundary *b);

// # Safety
// `b` must be a live handle; `out` must be writable.
enum AhStatus ah_boundary_degree(const struct AhBoundary *b, size_t *out);

// ‖F‖_p on the circle; pass `INFINITY` for the sup norm.
//
// # Safety
// `b` must be a live handle; `out` must be writable.
enum AhStatus ah_boundary_lp_norm(const struct AhBoundary *b, double p, double *out);

// c_α = Γ(α+1)/Γ(α/2+1)².
//
// # Safety
// `out` must be writable.
enum AhStatus ah_c_alpha(double alpha, double *out);

// P_α(z).
//
// # Safety
// `out` must be writable.
enum AhStatus ah_poisson_kernel(double alpha, struct AhComplex z, struct AhComplex *out);

// g_α(z), so that P_α = g_α·P.
//
// # Safety
// `out` must be writable.
enum AhStatus ah_g_alpha(double alpha, struct AhComplex z, struct AhComplex *out);

// The extension P_α[F]; the boundary is copied, so `b` may be freed after.
//
// # Safety
// `b` must be a live handle; `out` must be writable.
enum AhStatus ah_function_new(double alpha,
                              const struct AhBoundary *b,
                              enum AhEngine engine,
                              struct AhFunction **out);

// # Safety
// `f` must come from this library and not have been freed. NULL is ignored.
void ah_function_free(struct AhFunction *f);

// f(z).
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum AhStatus ah_function_extend(const struct AhFunction *f,
                                 struct AhComplex z,
                                 struct AhComplex *out);

// ∂f, ∂̄f and ∂_θf at z.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum AhStatus ah_function_derivatives(const struct AhFunction *f,
                                      struct AhComplex z,
                                      struct AhDerivatives *out);

// Integral means of f or a derivative on the dyadic radial grid, as a JSON
// report. Free the string with [`ah_string_free`].
//
// # Safety
// `f` must be a live handle; `out_json` must be writable.
enum AhStatus ah_hardy_norm_json(const struct AhFunction *f,
                                 enum AhTarget target,
                                 double p,
                                 char **out_json);

// Both sides of one Schwarz-type bound at z.
//
// # Safety
// `f` must be a live handle; `lhs` and `rhs` must be writable.
enum AhStatus ah_schwarz_check(const struct AhFunction *f,
                               struct AhComplex z,
                               enum AhWhich which,
                               double *lhs,
                               double *rhs);

// Runs a verification suite by name ("thm21", …, "alpha0"). `sweep_json` may
// be NULL for the defaults. A failed suite still returns `AH_STATUS_OK`;
// check `out_pass`.
//
// # Safety
// `suite` (and `sweep_json` when non-NULL) must be NUL-terminated strings;
// `out_json` and `out_pass` must be writable.
enum AhStatus ah_verify_json(const char *suite,
                             const char *sweep_json,
                             char **out_json,
                             bool *out_pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALPHA_HARMONIC_H */
