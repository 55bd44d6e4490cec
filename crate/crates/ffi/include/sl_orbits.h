#ifndef SL_ORBITS_H
#define SL_ORBITS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SloStatus {
  SLO_STATUS_OK = 0,
  SLO_STATUS_NULL_POINTER = 1,
  SLO_STATUS_DOMAIN = 2,
  SLO_STATUS_STRUCTURAL = 3,
  SLO_STATUS_NOT_IN_SL = 4,
  SLO_STATUS_OVERFLOW = 5,
  SLO_STATUS_BUDGET_EXCEEDED = 6,
  SLO_STATUS_PARSE = 7,
  SLO_STATUS_CONSISTENCY = 8,
  SLO_STATUS_OUT_OF_RANGE = 9,
  SLO_STATUS_PANIC = 10,
} SloStatus;

/**
 * Opaque census of all orbits for one `(m, n)`.
 */
typedef struct SloCensus SloCensus;

/**
 * Opaque result of the exhaustive verification for one `(m, n)`.
 */
typedef struct SloReport SloReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static, NUL-terminated description of a status code.
 */
const char *slo_status_message(enum SloStatus status);

/**
 * Jordan totient `φ_m(n)`.
 */
enum SloStatus slo_jordan_totient(uint32_t m, uint64_t n, uint64_t *out);

/**
 * `|SL(m, Z_n)|`.
 */
enum SloStatus slo_group_order(size_t m, uint64_t n, uint64_t *out);

/**
 * Order of the stabilizer of `(0, ..., 0, 1)`; needs `m >= 2`.
 */
enum SloStatus slo_stabilizer_order(size_t m, uint64_t n, uint64_t *out);

/**
 * Orbit label `gcd(a_1, ..., a_dim, n)` of a vector.
 */
enum SloStatus slo_orbit_label(uint64_t n, const uint64_t *vector, size_t dim, uint64_t *out);

/**
 * Determinant modulo `n` of a `dim × dim` matrix.
 */
enum SloStatus slo_det_mod(uint64_t n, size_t dim, const uint64_t *matrix, uint64_t *out);

/**
 * `out = (vector · matrix) mod n`; `out` holds `dim` entries. Fails with
 * `NOT_IN_SL` unless the matrix has determinant 1.
 */
enum SloStatus slo_act(uint64_t n,
                       size_t dim,
                       const uint64_t *vector,
                       const uint64_t *matrix,
                       uint64_t *out);

/**
 * Inverse of an `SL(dim, Z_n)` matrix; `out` holds `dim * dim` entries.
 */
enum SloStatus slo_sl_inverse(uint64_t n, size_t dim, const uint64_t *matrix, uint64_t *out);

/**
 * Splits a vector over `Z_{pq}` into its residues over `Z_p` and `Z_q`.
 */
enum SloStatus slo_crt_split(uint64_t p,
                             uint64_t q,
                             size_t dim,
                             const uint64_t *vector,
                             uint64_t *out_p,
                             uint64_t *out_q);

/**
 * Joins residues over `Z_p` and `Z_q` into the unique vector over `Z_{pq}`.
 */
enum SloStatus slo_crt_join(uint64_t p,
                            uint64_t q,
                            size_t dim,
                            const uint64_t *residue_p,
                            const uint64_t *residue_q,
                            uint64_t *out);

/**
 * Computes the orbit census for `(m, n)`. Release with [`slo_census_free`].
 */
enum SloStatus slo_census_new(size_t m, uint64_t n, struct SloCensus **out);

/**
 * Number of orbits; 0 for a null handle.
 */
size_t slo_census_len(const struct SloCensus *census);

/**
 * Sum of all orbit sizes (`n^m`); 0 for a null handle.
 */
uint64_t slo_census_total(const struct SloCensus *census);

/**
 * Label and size of the orbit at `index` (ascending by label).
 */
enum SloStatus slo_census_get(const struct SloCensus *census,
                              size_t index,
                              uint64_t *label,
                              uint64_t *size);

void slo_census_free(struct SloCensus *census);

/**
 * Runs the exhaustive verification for `(m, n)`. A `budget` of 0 selects the
 * default. Release with [`slo_report_free`].
 */
enum SloStatus slo_verify_new(size_t m, uint64_t n, uint64_t budget, struct SloReport **out);

/**
 * Whether every check passed; false for a null handle.
 */
bool slo_report_passed(const struct SloReport *report);

size_t slo_report_len(const struct SloReport *report);

/**
 * Whether the check at `index` passed.
 */
enum SloStatus slo_report_check_passed(const struct SloReport *report, size_t index, bool *passed);

/**
 * The report as a JSON document. Release with [`slo_string_free`].
 * Returns null for a null handle.
 */
char *slo_report_to_json(const struct SloReport *report);

void slo_report_free(struct SloReport *report);

void slo_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SL_ORBITS_H */
