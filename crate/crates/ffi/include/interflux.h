#ifndef INTERFLUX_H
#define INTERFLUX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every function.
 */
typedef enum IfStatus {
  IF_STATUS_OK = 0,
  IF_STATUS_NULL_POINTER = 1,
  /**
   * A parameter or text input was rejected.
   */
  IF_STATUS_INVALID_ARGUMENT = 2,
  /**
   * An argument lies outside the domain of a map.
   */
  IF_STATUS_DOMAIN = 3,
  /**
   * Stability, degeneracy or construction failure.
   */
  IF_STATUS_NUMERICAL = 4,
  /**
   * The counter-example recurrence left its admissible region.
   */
  IF_STATUS_INFEASIBLE = 5,
  /**
   * The output buffer is too small.
   */
  IF_STATUS_BUFFER_TOO_SMALL = 6,
  IF_STATUS_PANIC = 7,
} IfStatus;

/**
 * Sequences of the blow-up construction.
 */
typedef struct IfCounterexample IfCounterexample;

/**
 * Flux pair prepared for a data bound.
 */
typedef struct IfPair IfPair;

/**
 * Result of a solver run.
 */
typedef struct IfSolution IfSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *if_last_error(void);

/**
 * `g = u^2 - 1` on the left, `f = |u|^{p+1}` on the right.
 *
 * # Safety
 * The out pointer must be valid for writes.
 */
enum IfStatus if_pair_counterexample(double p,
                                     double data_bound,
                                     double domain_bound,
                                     struct IfPair **out_pair);

/**
 * Pair from `key=value` text with `left.*`, `right.*` and `data_bound`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; the out pointer must be valid for writes.
 */
enum IfStatus if_pair_from_kv(const char *text, struct IfPair **out_pair);

/**
 * # Safety
 * `pair` must come from this library and not be used afterwards. Null is ignored.
 */
void if_pair_free(struct IfPair *pair);

/**
 * Max-principle bound `S` and the smoothing exponent `min(γ, ν)`.
 *
 * # Safety
 * `pair` must be a live handle; out pointers must be valid for writes.
 */
enum IfStatus if_pair_bounds(const struct IfPair *pair, double *s_bound, double *s_star);

/**
 * Godunov flux across `x = 0` for left state `a` and right state `b`.
 *
 * # Safety
 * `pair` must be a live handle; `flux` must be valid for writes.
 */
enum IfStatus if_interface_flux(const struct IfPair *pair, double a, double b, double *flux);

/**
 * Exact `TV^s` of `values[0..len]` and the size of an optimal subdivision.
 *
 * # Safety
 * `values` must point to `len` readable doubles; out pointers must be valid.
 */
enum IfStatus if_tv_s(const double *values,
                      size_t len,
                      double s,
                      double *tv,
                      size_t *subdivision_size);

/**
 * Runs the scheme from cell averages `initial[0..n_cells]` on
 * `[-half_width, half_width]` up to `t_final`.
 *
 * # Safety
 * `pair` must be a live handle, `initial` must hold `n_cells` doubles and
 * The out pointer must be valid for writes.
 */
enum IfStatus if_solve(const struct IfPair *pair,
                       const double *initial,
                       size_t n_cells,
                       double half_width,
                       double t_final,
                       double cfl,
                       struct IfSolution **out_solution);

/**
 * # Safety
 * `solution` must come from [`if_solve`] and not be used afterwards. Null is ignored.
 */
void if_solution_free(struct IfSolution *solution);

/**
 * Number of time steps taken.
 *
 * # Safety
 * `solution` must be a live handle; `steps` must be valid for writes.
 */
enum IfStatus if_solution_steps(const struct IfSolution *solution, size_t *steps);

/**
 * Copies the final cell averages into `buf`, which must hold `n_cells` values.
 *
 * # Safety
 * `solution` must be a live handle; `buf` must be writable for `len` doubles.
 */
enum IfStatus if_solution_final_state(const struct IfSolution *solution, double *buf, size_t len);

/**
 * Builds the blow-up sequences. `i0 = 0` searches for a feasible start.
 *
 * # Safety
 * The out pointer must be valid for writes.
 */
enum IfStatus if_counterexample_build(double p,
                                      double eps,
                                      size_t i0,
                                      size_t n_terms,
                                      double seed_gap,
                                      struct IfCounterexample **out_cx);

/**
 * # Safety
 * `cx` must come from [`if_counterexample_build`] and not be used afterwards. Null is ignored.
 */
void if_counterexample_free(struct IfCounterexample *cx);

/**
 * First index `i0` and critical exponent `(1 + ε)/(p + 1)`.
 *
 * # Safety
 * `cx` must be a live handle; out pointers must be valid for writes.
 */
enum IfStatus if_counterexample_info(const struct IfCounterexample *cx,
                                     size_t *i0,
                                     double *critical_s);

/**
 * Position `x_i` and jump `u(x_i-) - u(x_i+)` at time 1.
 *
 * # Safety
 * `cx` must be a live handle; out pointers must be valid for writes.
 */
enum IfStatus if_counterexample_jump(const struct IfCounterexample *cx,
                                     size_t i,
                                     double *x,
                                     double *jump);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INTERFLUX_H */
