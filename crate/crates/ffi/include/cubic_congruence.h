#ifndef CUBIC_CONGRUENCE_H
#define CUBIC_CONGRUENCE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CcStatus {
  CC_STATUS_OK = 0,
  /**
   * Invalid argument, such as a zero modulus.
   */
  CC_STATUS_ARGUMENT = 1,
  /**
   * Mathematically invalid input, such as a residue that is not a root.
   */
  CC_STATUS_DOMAIN = 2,
  /**
   * Internal invariant violation.
   */
  CC_STATUS_INTERNAL = 3,
  CC_STATUS_NULL_POINTER = 4,
  /**
   * A value does not fit the 64-bit C representation.
   */
  CC_STATUS_OVERFLOW = 5,
} CcStatus;

typedef enum CcSeqKind {
  CC_SEQ_KIND_ONES = 0,
  /**
   * `a_{k,l} = e(-(k nu0 + l nu0^2)/m0)`.
   */
  CC_SEQ_KIND_SPIKE = 1,
  /**
   * Seeded independent +-1 entries.
   */
  CC_SEQ_KIND_RANDOM = 2,
} CcSeqKind;

/**
 * Opaque list of generators.
 */
typedef struct CcGeneratorTable CcGeneratorTable;

/**
 * Opaque list of residues.
 */
typedef struct CcRootList CcRootList;

/**
 * Generator `a + b 2^{1/3} + c 2^{2/3}`, Bezout data and root pair.
 */
typedef struct CcGamma {
  uint64_t m;
  uint64_t nu;
  int64_t a;
  int64_t b;
  int64_t c;
  int64_t u;
  int64_t v;
  int64_t w;
} CcGamma;

/**
 * The point `(n1/den, n2/den)`, unreduced.
 */
typedef struct CcRationalPoint {
  int64_t n1;
  int64_t n2;
  int64_t den;
} CcRationalPoint;

typedef struct CcSieveReport {
  double lhs;
  double rhs;
  double ratio;
  uint64_t pair_count;
} CcSieveReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *cc_version(void);

/**
 * Static description of a status code.
 */
const char *cc_status_message(enum CcStatus status);

/**
 * Message of the last failure on this thread; valid until the next call
 * into the library from the same thread.
 */
const char *cc_last_error_message(void);

/**
 * All roots of `x^3 = 2 (mod m)`, ascending. Free with `cc_root_list_free`.
 */
enum CcStatus cc_roots(uint64_t m, struct CcRootList **out);

/**
 * Number of roots in `list`; 0 for NULL.
 */
size_t cc_root_list_len(const struct CcRootList *list);

enum CcStatus cc_root_list_get(const struct CcRootList *list, size_t index, uint64_t *out_nu);

/**
 * Releases a list from `cc_roots`; NULL is ignored.
 */
void cc_root_list_free(struct CcRootList *list);

/**
 * One domain generator per root pair with `M < m <= 2M`, ordered by
 * `(m, nu)`. Free with `cc_generator_table_free`.
 */
enum CcStatus cc_enumerate_generators(uint64_t big_m, struct CcGeneratorTable **out);

/**
 * Number of rows in `table`; 0 for NULL.
 */
size_t cc_generator_table_len(const struct CcGeneratorTable *table);

enum CcStatus cc_generator_table_get(const struct CcGeneratorTable *table,
                                     size_t index,
                                     struct CcGamma *out);

/**
 * Releases a table from `cc_enumerate_generators`; NULL is ignored.
 */
void cc_generator_table_free(struct CcGeneratorTable *table);

/**
 * The domain generator of the ideal attached to `(m, nu)`, with Bezout data.
 */
enum CcStatus cc_generator_from_root(uint64_t m, uint64_t nu, struct CcGamma *out);

/**
 * Writes the three approximation points to `out[0..3]`.
 */
enum CcStatus cc_approximations(const struct CcGamma *gamma, struct CcRationalPoint *out);

/**
 * Rebuilds generator data from the three approximation points, given in
 * the order produced by `cc_approximations`.
 */
enum CcStatus cc_recover_root(const struct CcRationalPoint *points, struct CcGamma *out);

/**
 * Shortest integral line through `(r/q, s/q)`, as a Euclidean length.
 */
enum CcStatus cc_min_line_norm(int64_t r, int64_t s, int64_t q, double *out);

/**
 * Both sides of the large sieve inequality. `seed` is used by
 * `CC_SEQ_KIND_RANDOM`; `m0, nu0` by `CC_SEQ_KIND_SPIKE`.
 */
enum CcStatus cc_sieve_ratio(uint64_t big_m,
                             size_t k,
                             size_t l,
                             enum CcSeqKind kind,
                             uint64_t seed,
                             uint64_t m0,
                             uint64_t nu0,
                             struct CcSieveReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUBIC_CONGRUENCE_H */
