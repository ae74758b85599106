/* C interface for the rivergeo geometry toolkit. */

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Noncompactness measure selector.
typedef enum RgMeasure {
  // Set measure: twice the escape height.
  RG_MEASURE_ALPHA = 0,
  // Ball-covering measure: the escape height.
  RG_MEASURE_CHI = 1,
  // Separation measure: the escape height.
  RG_MEASURE_BETA = 2,
} RgMeasure;

// Result code of every API call.
typedef enum RgStatus {
  // The call succeeded and all out parameters are set.
  RG_STATUS_OK = 0,
  // A required pointer argument was null.
  RG_STATUS_NULL_POINTER = 1,
  // An argument was structurally invalid (non-finite number, empty
  // interval, malformed set description).
  RG_STATUS_INVALID_INPUT = 2,
  // Arguments were well formed but violated an operation's precondition
  // (weight outside [0, 1], epsilon out of range, and so on).
  RG_STATUS_PRECONDITION = 3,
  // A string argument was not valid UTF-8.
  RG_STATUS_UTF8 = 4,
  // A string argument was not valid JSON for the expected shape.
  RG_STATUS_JSON = 5,
  // An unexpected internal failure; the out parameters are unspecified.
  RG_STATUS_INTERNAL = 6,
} RgStatus;

// Opaque handle to a parsed, validated set description.
typedef struct RgSet RgSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Version of the underlying library as a static NUL-terminated string.
// The pointer is valid for the life of the process; do not free it.
const char *rg_version(void);

// Distance between `(x1, y1)` and `(x2, y2)`.
//
// # Safety
// `out_distance` must point to a writable `double`.
enum RgStatus rg_distance(double x1, double y1, double x2, double y2, double *out_distance);

// Point halfway along the shortest path between two points.
//
// # Safety
// `out_x` and `out_y` must point to writable `double`s.
enum RgStatus rg_midpoint(double x1, double y1, double x2, double y2, double *out_x, double *out_y);

// Convex-combination point for a weight `lambda` in [0, 1]: at 1 it is the
// first point, at 0 the second.
//
// # Safety
// `out_x` and `out_y` must point to writable `double`s.
enum RgStatus rg_w_point(double x1,
                         double y1,
                         double x2,
                         double y2,
                         double lambda,
                         double *out_x,
                         double *out_y);

// Convexity residual of the combination structure: the weighted distance
// sum from `(ux, uy)` minus the distance to the combination point. It is
// nonnegative for every admissible input.
//
// # Safety
// `out_residual` must point to a writable `double`.
enum RgStatus rg_takahashi_residual(double ux,
                                    double uy,
                                    double v1x,
                                    double v1y,
                                    double v2x,
                                    double v2y,
                                    double lambda,
                                    double *out_residual);

// Shortest-path decomposition between two points.
//
// Writes up to three pieces as quadruples `x1 y1 x2 y2` into `out_pieces`
// and the piece count into `out_piece_count`.
//
// # Safety
// `out_pieces` must point to a writable array of at least 12 `double`s and
// `out_piece_count` to a writable `uintptr_t`.
enum RgStatus rg_segment_pieces(double x1,
                                double y1,
                                double x2,
                                double y2,
                                double *out_pieces,
                                size_t *out_piece_count);

// Parses and validates a JSON set description into a new handle.
//
// # Safety
// `json` must be a NUL-terminated string and `out_set` a writable pointer
// slot. On success the caller owns the handle and must release it with
// [`rg_set_free`].
enum RgStatus rg_set_from_json(const char *json, struct RgSet **out_set);

// Serializes a set handle back to JSON.
//
// # Safety
// `set` must be a live handle from this library and `out_json` a writable
// pointer slot. The returned string must be released with
// [`rg_string_free`].
enum RgStatus rg_set_to_json(const struct RgSet *set, char **out_json);

// Releases a set handle. Null is ignored.
//
// # Safety
// `set` must be null or a handle from this library not yet freed.
void rg_set_free(struct RgSet *set);

// Releases a string produced by this library. Null is ignored.
//
// # Safety
// `text` must be null or a string from this library not yet freed.
void rg_string_free(char *text);

// Whether the set contains `(x, y)` within slack `tol`.
//
// # Safety
// `set` must be a live handle and `out_contains` a writable `bool`.
enum RgStatus rg_set_contains(const struct RgSet *set,
                              double x,
                              double y,
                              double tol,
                              bool *out_contains);

// Distance from `(x, y)` to the set.
//
// # Safety
// `set` must be a live handle and `out_distance` a writable `double`.
enum RgStatus rg_set_distance(const struct RgSet *set, double x, double y, double *out_distance);

// Exact convexity decision for the set.
//
// # Safety
// `set` must be a live handle and `out_convex` a writable `bool`.
enum RgStatus rg_set_is_convex(const struct RgSet *set, bool *out_convex);

// Full convexity verdict as JSON, including any counterexample segment.
//
// # Safety
// `set` must be a live handle and `out_json` a writable pointer slot. The
// returned string must be released with [`rg_string_free`].
enum RgStatus rg_set_convexity_json(const struct RgSet *set, char **out_json);

// Escape height of the set: how far its points can stand off the axis
// arbitrarily far along it. Zero exactly for relatively compact sets.
//
// # Safety
// `set` must be a live handle and `out_height` a writable `double`.
enum RgStatus rg_set_escape_height(const struct RgSet *set, double *out_height);

// Noncompactness measures of the set as a JSON report.
//
// # Safety
// `set` must be a live handle and `out_json` a writable pointer slot. The
// returned string must be released with [`rg_string_free`].
enum RgStatus rg_set_mnc_json(const struct RgSet *set, char **out_json);

// Convex hull of `point_count` points given as interleaved `x, y` pairs.
//
// # Safety
// `coords` must point to `2 * point_count` readable `double`s and
// `out_set` to a writable pointer slot. On success the caller owns the
// handle and must release it with [`rg_set_free`].
enum RgStatus rg_convex_hull(const double *coords, size_t point_count, struct RgSet **out_set);

// Modulus-of-noncompactness estimate for a measure at `epsilon`, scanning
// at the given grid resolution (at least 2; around 200 for tight bounds).
//
// # Safety
// `out_value` must point to a writable `double`.
enum RgStatus rg_modulus_estimate(enum RgMeasure measure,
                                  double epsilon,
                                  uint32_t resolution,
                                  double *out_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
