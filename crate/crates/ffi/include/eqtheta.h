#ifndef EQTHETA_H
#define EQTHETA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EqtOutcome {
  EQT_OUTCOME_VERIFIED = 0,
  EQT_OUTCOME_FAILED = 1,
  EQT_OUTCOME_SKIPPED = 2,
} EqtOutcome;

typedef enum EqtStatus {
  EQT_STATUS_OK = 0,
  EQT_STATUS_NULL_POINTER = 1,
  EQT_STATUS_INVALID_ARGUMENT = 2,
  EQT_STATUS_MATH_ERROR = 3,
  EQT_STATUS_OUT_OF_RANGE = 4,
  EQT_STATUS_PANIC = 5,
} EqtStatus;

/**
 * Opaque theta element: coefficients ordered by ascending label `a` of `sigma_a`.
 */
typedef struct EqtTheta EqtTheta;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread. Valid until the next
 * call into the library from this thread; do not free.
 */
const char *eqt_last_error(void);

/**
 * Compute `theta_{S,T}(j)` for `Q(mu_f)` with `S` the minimal set plus `s_extra`.
 *
 * # Safety
 * Array arguments must be valid for their lengths and `out` must be writable.
 */
enum EqtStatus eqt_theta_new(uint64_t f,
                             const uint64_t *t,
                             size_t t_len,
                             const uint64_t *s_extra,
                             size_t s_extra_len,
                             int64_t j,
                             struct EqtTheta **out);

/**
 * Number of coefficients, or 0 for a null handle.
 *
 * # Safety
 * `theta` must be null or a live handle from [`eqt_theta_new`].
 */
size_t eqt_theta_len(const struct EqtTheta *theta);

/**
 * Label `a` of the `index`-th group element `sigma_a`.
 *
 * # Safety
 * `theta` must be a live handle and `label` writable.
 */
enum EqtStatus eqt_theta_label(const struct EqtTheta *theta, size_t index, uint64_t *label);

/**
 * The `index`-th coefficient as a `num/den` string; free with [`eqt_string_free`].
 * Returns null on error.
 *
 * # Safety
 * `theta` must be a live handle.
 */
char *eqt_theta_coefficient(const struct EqtTheta *theta, size_t index);

/**
 * # Safety
 * `theta` must be null or a handle from [`eqt_theta_new`] not yet freed.
 */
void eqt_theta_free(struct EqtTheta *theta);

/**
 * Check the minus-part congruence between weights `j` and `k` for `Q(mu_f)`
 * modulo `p^n`, with minimal `S` and the given `T`.
 *
 * # Safety
 * `t` must be valid for `t_len` values and `outcome_out` writable.
 */
enum EqtStatus eqt_verify_minus(uint64_t f,
                                uint64_t p,
                                uint32_t n,
                                const uint64_t *t,
                                size_t t_len,
                                int64_t j,
                                int64_t k,
                                enum EqtOutcome *outcome_out);

/**
 * Kummer's congruence `(1 - p^{-j}) zeta(j) = (1 - p^{-k}) zeta(k) mod p^n`.
 *
 * # Safety
 * `outcome_out` must be writable.
 */
enum EqtStatus eqt_kummer(uint64_t p,
                          uint32_t n,
                          int64_t j,
                          int64_t k,
                          enum EqtOutcome *outcome_out);

/**
 * Run a sweep and return the JSON report. `config` is the text of a sweep
 * config, or null for the built-in default grid. Returns null on error.
 *
 * # Safety
 * `config` must be null or a NUL-terminated string.
 */
char *eqt_sweep_json(const char *config, uint64_t seed, bool inject_fault);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void eqt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQTHETA_H */
