#ifndef CIMSET_H
#define CIMSET_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every call. `CIMSET_STATUS_OK` is zero.
 */
typedef enum CimsetStatus {
  CIMSET_STATUS_OK = 0,
  CIMSET_STATUS_NULL_POINTER = 1,
  CIMSET_STATUS_INVALID_UTF8 = 2,
  CIMSET_STATUS_PARSE = 3,
  CIMSET_STATUS_INVALID_ARGUMENT = 4,
  CIMSET_STATUS_BUFFER_TOO_SMALL = 5,
  CIMSET_STATUS_LIMIT_EXCEEDED = 6,
  CIMSET_STATUS_NUMERIC = 7,
  CIMSET_STATUS_INTERNAL = 8,
} CimsetStatus;

/**
 * Opaque directed graph.
 */
typedef struct CimsetGraph CimsetGraph;

/**
 * Evidence from the numeric covariance-equivalence check.
 */
typedef struct CimsetNumericResult {
  /**
   * True when every residual fell below the tolerance.
   */
  bool equivalent;
  double max_residual;
  double min_residual;
} CimsetNumericResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL after a success.
 *
 * The pointer stays valid until the next call on the same thread.
 */
const char *cimset_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *cimset_version(void);

/**
 * Parses a graph in text (`n=3\n1 -> 2`) or JSON (`{"n":3,"edges":[[1,2]]}`) form.
 *
 * # Safety
 * `text` must be NUL-terminated and `out` writable. Release the handle with `cimset_graph_free`.
 */
enum CimsetStatus cimset_graph_parse(const char *text, struct CimsetGraph **out);

/**
 * Builds a graph from `edge_count` pairs stored flat in `edges` (tail, head, tail, head, ...).
 *
 * # Safety
 * `edges` must point to `2 * edge_count` values (it may be NULL when `edge_count` is 0).
 */
enum CimsetStatus cimset_graph_from_edges(size_t n,
                                          const size_t *edges,
                                          size_t edge_count,
                                          struct CimsetGraph **out);

/**
 * Releases a graph handle. NULL is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void cimset_graph_free(struct CimsetGraph *g);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CimsetStatus cimset_graph_node_count(const struct CimsetGraph *g, size_t *out);

/**
 * Writes the characteristic imset into `buf` as `2^n - 1` values, nonempty sets
 * ordered by size and then lexicographically.
 *
 * `*written` always receives the required length, so a call with `len == 0`
 * queries the size. A short buffer gives `CIMSET_STATUS_BUFFER_TOO_SMALL`.
 *
 * # Safety
 * `buf` must hold `len` values (it may be NULL when `len` is 0); `written` must be writable.
 */
enum CimsetStatus cimset_char_imset(const struct CimsetGraph *g,
                                    int64_t *buf,
                                    size_t len,
                                    size_t *written);

/**
 * Characteristic imset coordinate `c(S)` for the set given as a bitmask (bit `i-1` is node `i`).
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CimsetStatus cimset_char_imset_at(const struct CimsetGraph *g,
                                       uint16_t set_mask,
                                       int64_t *out);

/**
 * Characteristic imset as a JSON document; free it with `cimset_string_free`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CimsetStatus cimset_char_imset_json(const struct CimsetGraph *g, char **out);

/**
 * Whether both graphs have the same characteristic imset.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum CimsetStatus cimset_imset_equivalent(const struct CimsetGraph *g,
                                          const struct CimsetGraph *h,
                                          bool *out);

/**
 * Number of graphs sharing the characteristic imset of `g` (n at most 6).
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CimsetStatus cimset_fiber_size(const struct CimsetGraph *g, size_t *out);

/**
 * Numeric covariance-equivalence check with the default solver settings
 * (50 restarts, tolerance 1e-8) apart from the given trial count and seed.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum CimsetStatus cimset_covariance_equiv_numeric(const struct CimsetGraph *g,
                                                  const struct CimsetGraph *h,
                                                  size_t trials,
                                                  uint64_t seed,
                                                  struct CimsetNumericResult *out);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void cimset_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CIMSET_H */
