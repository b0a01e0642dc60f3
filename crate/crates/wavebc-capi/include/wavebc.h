#ifndef WAVEBC_H
#define WAVEBC_H

/* Generated by cbindgen from the wavebc-capi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Stability classes, matching the library's five-way classification.
 */
typedef enum {
  WAVEBC_CLASS_ILL_POSED = 0,
  WAVEBC_CLASS_STRONGLY_BOUNDARY_STABLE = 1,
  WAVEBC_CLASS_BOUNDARY_STABLE = 2,
  WAVEBC_CLASS_STABLE = 3,
  WAVEBC_CLASS_UNSTABLE = 4,
} WavebcClass;

/**
 * Status codes returned by every entry point.
 */
typedef enum {
  WAVEBC_STATUS_OK = 0,
  WAVEBC_STATUS_NULL_POINTER = 1,
  WAVEBC_STATUS_INVALID_ARGUMENT = 2,
  WAVEBC_STATUS_DIVERGED = 3,
  WAVEBC_STATUS_ANALYSIS_FAILURE = 4,
} WavebcStatus;

/**
 * Opaque solver handle: a traveling-wave manufactured problem on a strip
 * grid with the selected boundary coefficient.
 */
typedef struct WavebcSolver WavebcSolver;

/**
 * Evaluates `κ = √(s² + ω²)` on the branch `−π < arg(s² + ω²) ≤ π`,
 * `arg κ = ½ arg(s² + ω²)`. Fails on `s = 0, ω = 0`.
 *
 * # Safety
 * `out_re` and `out_im` must be valid writable pointers.
 */
WavebcStatus wavebc_kappa(double s_re, double s_im, double omega, double *out_re, double *out_im);

/**
 * Classifies a scalar boundary condition.
 * `bc_type` selects the family (1–4); `a` is only used by type 1 and `b`
 * is ignored by type 3.
 *
 * # Safety
 * `out_class` must be a valid writable pointer.
 */
WavebcStatus wavebc_classify_scalar(int bc_type, double a, double b, WavebcClass *out_class);

/**
 * Classifies the coupled two-component boundary condition with
 * coefficients `b1`, `b2`; only the product `b1·b2` determines the class.
 *
 * # Safety
 * `out_class` must be a valid writable pointer.
 */
WavebcStatus wavebc_classify_coupled(double b1, double b2, WavebcClass *out_class);

/**
 * Computes the first `n` roots of the reflection-cascade characteristic
 * equation. `which` is 0 for the loss case `e^{2λ} + λ² = 0`, 1 for the
 * gain case `e^{2λ} + λ⁻² = 0`. Each output array must hold `n` doubles;
 * `residual` may be null.
 *
 * # Safety
 * `re` and `im` must point to at least `n` writable doubles;
 * `residual` must be null or do the same.
 */
WavebcStatus wavebc_reflection_roots(int which,
                                     uintptr_t n,
                                     double *re,
                                     double *im,
                                     double *residual);

/**
 * Creates a solver for grid size `h` and Courant number `courant`.
 * `b_kind` selects the x = 0 boundary coefficient: 0 for `b = 0`,
 * 1 for real `b = b_value`, 2 for imaginary `b = i·b_value`.
 *
 * # Safety
 * `out` must be a valid writable pointer; the returned handle must be
 * released with `wavebc_solver_free`.
 */
WavebcStatus wavebc_solver_new(double h,
                               double courant,
                               int b_kind,
                               double b_value,
                               WavebcSolver **out);

/**
 * Runs the solver to time `t_end` and reports the final max-norm error
 * against the exact traveling wave. `out_max_error` may be null.
 *
 * # Safety
 * `solver` must come from `wavebc_solver_new` and not have been freed;
 * `out_max_error` must be null or a valid writable pointer.
 */
WavebcStatus wavebc_solver_run(WavebcSolver *solver, double t_end, double *out_max_error);

/**
 * Releases a solver handle. A null pointer is ignored.
 *
 * # Safety
 * `solver` must be null or a live handle from `wavebc_solver_new`.
 */
void wavebc_solver_free(WavebcSolver *solver);

#endif /* WAVEBC_H */
