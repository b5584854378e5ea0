#ifndef CHTG_H
#define CHTG_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ChtgStatus {
  CHTG_STATUS_OK = 0,
  CHTG_STATUS_NULL_POINTER = 1,
  CHTG_STATUS_INVALID_ARGUMENT = 2,
  CHTG_STATUS_MODULUS_MISMATCH = 3,
  CHTG_STATUS_DIVISION_BY_ZERO = 4,
  CHTG_STATUS_PANIC = 5,
} ChtgStatus;

typedef enum ChtgClass {
  CHTG_CLASS_REGULAR_ELLIPTIC = 0,
  CHTG_CLASS_LOXODROMIC = 1,
  CHTG_CLASS_BOUNDARY = 2,
} ChtgClass;

typedef enum ChtgVerdict {
  CHTG_VERDICT_NON_DISCRETE_OR_NON_FAITHFUL = 0,
  CHTG_VERDICT_NOT_APPLICABLE = 1,
  CHTG_VERDICT_INCONCLUSIVE = 2,
} ChtgVerdict;

typedef struct ChtgCertificate ChtgCertificate;

typedef struct ChtgCyclo ChtgCyclo;

typedef struct ChtgSearchReport ChtgSearchReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *chtg_last_error(void);

/**
 * # Safety
 * `s` is null or a string returned by this library, not yet freed.
 */
void chtg_string_free(char *s);

/**
 * `τ(α)` for the `(m, m, ∞)` triangle.
 *
 * # Safety
 * `re` and `im` are valid for writes.
 */
enum ChtgStatus chtg_trace(uint32_t m, double alpha, double *re, double *im);

/**
 * Isometry class and discriminant of `τ(α)`; `f` may be null.
 *
 * # Safety
 * `class` is valid for writes; `f` is null or valid for writes.
 */
enum ChtgStatus chtg_classify(uint32_t m, double alpha, enum ChtgClass *class_, double *f);

/**
 * # Safety
 * `out` is valid for writes.
 */
enum ChtgStatus chtg_euler_phi(uint64_t n, uint64_t *out);

/**
 * # Safety
 * `out` is valid for writes.
 */
enum ChtgStatus chtg_moebius(uint64_t n, int64_t *out);

/**
 * Certificate for `(m, m, ∞)` at angular invariant `alpha`.
 *
 * # Safety
 * `out` is valid for writes; on success it receives a handle to release
 * with [`chtg_certificate_free`].
 */
enum ChtgStatus chtg_certify(uint32_t m,
                             double alpha,
                             uint64_t n_max,
                             uint32_t precision_bits,
                             struct ChtgCertificate **out);

/**
 * # Safety
 * `cert` is a live handle; `out` is valid for writes.
 */
enum ChtgStatus chtg_certificate_verdict(const struct ChtgCertificate *cert, enum ChtgVerdict *out);

/**
 * JSON transcript; release with [`chtg_string_free`].
 *
 * # Safety
 * `cert` is a live handle; `out` is valid for writes.
 */
enum ChtgStatus chtg_certificate_json(const struct ChtgCertificate *cert, char **out);

/**
 * # Safety
 * `cert` is null or a live handle, not used afterwards.
 */
void chtg_certificate_free(struct ChtgCertificate *cert);

/**
 * Exhaustive search for orders `n ≤ n_max`; `symmetry` non-zero reduces by orbits.
 *
 * # Safety
 * `out` is valid for writes; on success it receives a handle to release
 * with [`chtg_search_free`].
 */
enum ChtgStatus chtg_search(uint32_t m,
                            uint64_t n_max,
                            int32_t symmetry,
                            struct ChtgSearchReport **out);

/**
 * Counts from a search; any out pointer may be null.
 *
 * # Safety
 * `report` is a live handle; non-null out pointers are valid for writes.
 */
enum ChtgStatus chtg_search_counts(const struct ChtgSearchReport *report,
                                   uint64_t *examined,
                                   uint64_t *rejected,
                                   uint64_t *survivors);

/**
 * # Safety
 * `report` is null or a live handle, not used afterwards.
 */
void chtg_search_free(struct ChtgSearchReport *report);

/**
 * `ω_N^j` in `ℚ[ω_N]`.
 *
 * # Safety
 * `out` is valid for writes.
 */
enum ChtgStatus chtg_cyclo_root_of_unity(uint64_t order, int64_t j, struct ChtgCyclo **out);

/**
 * # Safety
 * `a`, `b` are live handles; `out` is valid for writes.
 */
enum ChtgStatus chtg_cyclo_add(const struct ChtgCyclo *a,
                               const struct ChtgCyclo *b,
                               struct ChtgCyclo **out);

/**
 * # Safety
 * `a`, `b` are live handles; `out` is valid for writes.
 */
enum ChtgStatus chtg_cyclo_mul(const struct ChtgCyclo *a,
                               const struct ChtgCyclo *b,
                               struct ChtgCyclo **out);

/**
 * `σ_k(a)`; `k` must be a unit modulo the field's order.
 *
 * # Safety
 * `a` is a live handle; `out` is valid for writes.
 */
enum ChtgStatus chtg_cyclo_galois(const struct ChtgCyclo *a, int64_t k, struct ChtgCyclo **out);

/**
 * Writes 1 if `a` is zero, else 0.
 *
 * # Safety
 * `a` is a live handle; `out` is valid for writes.
 */
enum ChtgStatus chtg_cyclo_is_zero(const struct ChtgCyclo *a, int32_t *out);

/**
 * `{"N": .., "coeffs": [..]}`; release with [`chtg_string_free`].
 *
 * # Safety
 * `a` is a live handle; `out` is valid for writes.
 */
enum ChtgStatus chtg_cyclo_json(const struct ChtgCyclo *a, char **out);

/**
 * # Safety
 * `a` is null or a live handle, not used afterwards.
 */
void chtg_cyclo_free(struct ChtgCyclo *a);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHTG_H */
