#ifndef RIPSTREAM_H
#define RIPSTREAM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RipsStatus {
  RIPS_STATUS_OK = 0,
  /**
   * The iterator is exhausted; no output was written.
   */
  RIPS_STATUS_DONE = 1,
  RIPS_STATUS_NULL_POINTER = 2,
  RIPS_STATUS_INVALID_ARGUMENT = 3,
  /**
   * Malformed input data such as a negative or non-finite distance.
   */
  RIPS_STATUS_DATA_ERROR = 4,
  RIPS_STATUS_BUFFER_TOO_SMALL = 5,
  RIPS_STATUS_PANIC = 6,
} RipsStatus;

/**
 * Cofacets of one simplex in non-decreasing diameter order.
 */
typedef struct RipsCoboundary RipsCoboundary;

/**
 * A finite metric space with its sorted neighborhood lists.
 */
typedef struct RipsSpace RipsSpace;

/**
 * Simplices of one dimension in non-decreasing diameter order.
 */
typedef struct RipsStream RipsStream;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a space from `n` points of dimension `dim`, stored row-major in
 * `coords` (`n * dim` values), under the Euclidean metric.
 *
 * # Safety
 * `coords` must point to `n * dim` readable doubles; `out` must be writable.
 */
enum RipsStatus rips_space_from_points(const double *coords,
                                       size_t n,
                                       size_t dim,
                                       struct RipsSpace **out);

/**
 * Builds a space from the strict lower triangle of a distance matrix in
 * row order: `d(1,0), d(2,0), d(2,1), d(3,0), ...`. `len` must be a
 * triangular number.
 *
 * # Safety
 * `values` must point to `len` readable doubles; `out` must be writable.
 */
enum RipsStatus rips_space_from_lower_matrix(const double *values,
                                             size_t len,
                                             struct RipsSpace **out);

/**
 * Number of points, or 0 for a null handle.
 *
 * # Safety
 * `space` must be null or a live handle.
 */
size_t rips_space_len(const struct RipsSpace *space);

/**
 * Distance between two points, or NaN if either index is out of range.
 *
 * # Safety
 * `space` must be null or a live handle.
 */
double rips_space_distance(const struct RipsSpace *space, size_t i, size_t j);

/**
 * Smallest radius at which the complex becomes a cone, or NaN for a null handle.
 *
 * # Safety
 * `space` must be null or a live handle.
 */
double rips_space_enclosing_radius(const struct RipsSpace *space);

/**
 * # Safety
 * `space` must be null or a handle not freed before.
 */
void rips_space_free(struct RipsSpace *space);

/**
 * Starts a stream of the `dim`-simplices with diameter `<= threshold`.
 * With `skip_apparent`, simplices that are the cofacet of an apparent
 * pair are left out (dimension 2 and up).
 *
 * # Safety
 * `space` must be a live handle; `out` must be writable.
 */
enum RipsStatus rips_stream_new(const struct RipsSpace *space,
                                size_t dim,
                                double threshold,
                                bool skip_apparent,
                                struct RipsStream **out);

/**
 * Writes the next simplex: its vertices in decreasing order into
 * `vertices` (room for `capacity`), the vertex count into `count` and the
 * diameter into `diameter`. Returns `Done` at the end of the stream.
 * `BufferTooSmall` consumes nothing; `count` then holds the size needed.
 *
 * # Safety
 * `stream` must be a live handle; `vertices` must have room for
 * `capacity` values; `count` and `diameter` must be writable.
 */
enum RipsStatus rips_stream_next(struct RipsStream *stream,
                                 size_t *vertices,
                                 size_t capacity,
                                 size_t *count,
                                 double *diameter);

/**
 * # Safety
 * `stream` must be null or a handle not freed before.
 */
void rips_stream_free(struct RipsStream *stream);

/**
 * Starts the coboundary of the simplex on `vertices` (any order, at least
 * two). Cofacets with diameter above `threshold` are left out; pass
 * infinity for no bound.
 *
 * # Safety
 * `space` must be a live handle; `vertices` must point to `count` values;
 * `out` must be writable.
 */
enum RipsStatus rips_coboundary_new(const struct RipsSpace *space,
                                    const size_t *vertices,
                                    size_t count,
                                    double threshold,
                                    struct RipsCoboundary **out);

/**
 * Writes the next added vertex and the cofacet's diameter, or returns `Done`.
 *
 * # Safety
 * `cob` must be a live handle; `vertex` and `diameter` must be writable.
 */
enum RipsStatus rips_coboundary_next(struct RipsCoboundary *cob, size_t *vertex, double *diameter);

/**
 * # Safety
 * `cob` must be null or a handle not freed before.
 */
void rips_coboundary_free(struct RipsCoboundary *cob);

/**
 * Looks up the apparent pair of the simplex on `vertices`. On `Ok`,
 * `found` tells whether it has one and `vertex` is the vertex that
 * completes the cofacet.
 *
 * # Safety
 * `space` must be a live handle; `vertices` must point to `count` values;
 * `vertex` and `found` must be writable.
 */
enum RipsStatus rips_apparent_cofacet(const struct RipsSpace *space,
                                      const size_t *vertices,
                                      size_t count,
                                      size_t *vertex,
                                      bool *found);

/**
 * Copies the last error message of this thread into `buf` (NUL
 * terminated, truncated to `capacity`) and returns its full length
 * without the terminator; 0 if there is none.
 *
 * # Safety
 * `buf` must be null or have room for `capacity` bytes.
 */
size_t rips_last_error(char *buf, size_t capacity);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RIPSTREAM_H */
