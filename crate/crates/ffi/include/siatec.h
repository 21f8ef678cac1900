#ifndef SIATEC_H
#define SIATEC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum {
  SIATEC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SIATEC_STATUS_NULL_POINTER = 1,
  /**
   * An argument was out of range or not valid UTF-8.
   */
  SIATEC_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Points of different dimensions were combined.
   */
  SIATEC_STATUS_DIMENSION_MISMATCH = 3,
  /**
   * Dataset text or an encoding document could not be parsed.
   */
  SIATEC_STATUS_PARSE = 4,
  /**
   * An encoding failed to decode to its input.
   */
  SIATEC_STATUS_LOSSY = 5,
  /**
   * The library panicked; the handle arguments should be considered unusable.
   */
  SIATEC_STATUS_PANIC = 6,
} SiatecStatus;

/**
 * TEC cover algorithm used by [`siatec_encode`].
 */
typedef enum {
  SIATEC_ALGORITHM_COSIATEC = 0,
  SIATEC_ALGORITHM_SIATEC_COMPRESS = 1,
} SiatecAlgorithm;

/**
 * An encoding together with the scale of the dataset it encodes.
 */
typedef struct SiatecEncoding SiatecEncoding;

/**
 * A dataset together with its per-dimension decimal scale.
 */
typedef struct SiatecPointSet SiatecPointSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or null if none.
 *
 * The string is owned by the library and stays valid until the next failing
 * call on the same thread.
 */
const char *siatec_last_error_message(void);

/**
 * Builds a point set from `n_points * dim` row-major integer coordinates.
 * Duplicate points are merged.
 *
 * # Safety
 * `coords` must point to `n_points * dim` readable values (it may be null
 * when `n_points` is zero) and `out` must be writable.
 */
SiatecStatus siatec_point_set_from_coords(const int64_t *coords,
                                          size_t n_points,
                                          size_t dim,
                                          SiatecPointSet **out);

/**
 * Parses dataset text (one point per line, values separated by whitespace
 * or commas, `#` comment lines, decimals allowed).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` must be writable.
 */
SiatecStatus siatec_point_set_parse(const char *text, SiatecPointSet **out);

/**
 * Number of points, or 0 for a null handle.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
size_t siatec_point_set_len(const SiatecPointSet *set);

/**
 * Number of coordinates per point, or 0 for a null handle.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
size_t siatec_point_set_dim(const SiatecPointSet *set);

/**
 * Copies the points, in ascending lexicographic order, as row-major
 * coordinates into `buf`, which must hold at least `len * dim` values.
 * Coordinates are the scaled integers; see [`siatec_point_set_scale`].
 *
 * # Safety
 * `set` must be a live handle and `buf` must point to `buf_len` writable values.
 */
SiatecStatus siatec_point_set_copy_coords(const SiatecPointSet *set, int64_t *buf, size_t buf_len);

/**
 * Copies the per-dimension decimal divisors into `buf`, which must hold at
 * least `dim` values. Coordinate `i` of a point is its value times `scale[i]`.
 *
 * # Safety
 * `set` must be a live handle and `buf` must point to `buf_len` writable values.
 */
SiatecStatus siatec_point_set_scale(const SiatecPointSet *set, uint64_t *buf, size_t buf_len);

/**
 * Releases a point set. Null is ignored.
 *
 * # Safety
 * `set` must be null or a handle not yet freed.
 */
void siatec_point_set_free(SiatecPointSet *set);

/**
 * Encodes a non-empty point set with the cover algorithm `algorithm` (a
 * [`SiatecAlgorithm`] value), checking that the result decodes to the input.
 *
 * # Safety
 * `set` must be a live handle and `out` must be writable.
 */
SiatecStatus siatec_encode(const SiatecPointSet *set,
                           uint32_t algorithm,
                           bool recursia,
                           bool rrt,
                           bool only_if_smaller,
                           SiatecEncoding **out);

/**
 * Parses an encoding document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` must be writable.
 */
SiatecStatus siatec_encoding_parse(const char *json, SiatecEncoding **out);

/**
 * Serializes an encoding to its canonical document text. Release the
 * string with [`siatec_string_free`].
 *
 * # Safety
 * `encoding` must be a live handle and `out` must be writable.
 */
SiatecStatus siatec_encoding_to_json(const SiatecEncoding *encoding, char **out);

/**
 * Decodes an encoding into a new point set.
 *
 * # Safety
 * `encoding` must be a live handle and `out` must be writable.
 */
SiatecStatus siatec_encoding_decode(const SiatecEncoding *encoding, SiatecPointSet **out);

/**
 * Encoding size (pattern points plus nonzero translators, counted through
 * nested patterns), or 0 for a null handle.
 *
 * # Safety
 * `encoding` must be null or a live handle.
 */
size_t siatec_encoding_size(const SiatecEncoding *encoding);

/**
 * Number of top-level TECs, or 0 for a null handle.
 *
 * # Safety
 * `encoding` must be null or a live handle.
 */
size_t siatec_encoding_tec_count(const SiatecEncoding *encoding);

/**
 * Releases an encoding. Null is ignored.
 *
 * # Safety
 * `encoding` must be null or a handle not yet freed.
 */
void siatec_encoding_free(SiatecEncoding *encoding);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void siatec_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIATEC_H */
