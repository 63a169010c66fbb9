#ifndef POWERSUM_H
#define POWERSUM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PsStatus {
  PS_STATUS_OK = 0,
  PS_STATUS_NULL_POINTER = 1,
  PS_STATUS_INVALID_ARGUMENT = 2,
  PS_STATUS_NOT_REGULAR = 3,
  PS_STATUS_SINGULAR = 4,
  PS_STATUS_UNBOUNDED = 5,
  PS_STATUS_K_OUT_OF_RANGE = 6,
  PS_STATUS_PANIC = 7,
} PsStatus;

typedef enum PsExtremum {
  PS_EXTREMUM_MIN = 0,
  PS_EXTREMUM_MAX = 1,
} PsExtremum;

typedef enum PsLocationClass {
  PS_LOCATION_CLASS_VERTEX_RAY = 0,
  PS_LOCATION_CLASS_ARC_MIDPOINT = 1,
  PS_LOCATION_CLASS_CONSTANT = 2,
  PS_LOCATION_CLASS_UNBOUNDED_AT_VERTEX_RAY = 3,
} PsLocationClass;

typedef enum PsBoundSense {
  // Some probe has f >= bound.
  PS_BOUND_SENSE_EXISTS_M_GEQ = 0,
  // Some probe has f <= bound.
  PS_BOUND_SENSE_EXISTS_M_LEQ = 1,
} PsBoundSense;

typedef enum PsRegimeKind {
  PS_REGIME_KIND_NEGATIVE_LAMBDA = 0,
  PS_REGIME_KIND_EVEN_INTEGER_CONSTANT = 1,
  PS_REGIME_KIND_BAND_BETWEEN_EVENS = 2,
  PS_REGIME_KIND_AT_LEAST2N = 3,
} PsRegimeKind;

// Opaque handle: probe-circle radius plus base points.
typedef struct PsConfig PsConfig;

typedef struct PsOracleResult {
  double argopt;
  double value;
  double certified_window;
  size_t samples;
  // Nonzero when the sum did not vary over the scan.
  uint8_t constant;
} PsOracleResult;

typedef struct PsExtremumReport {
  enum PsLocationClass location_class;
  // `inf` for an unbounded maximum.
  double value;
  // First witness angle; NaN when there is none.
  double witness;
  size_t witness_count;
} PsExtremumReport;

// Message for the last failed call on this thread; empty after a success.
// Valid until the next call into this library on the same thread.
const char *ps_last_error_message(void);

// Regular `n`-gon with a vertex at angle 0, probed on the circle of radius
// `radius`. The handle must be released with [`ps_config_free`].
//
// # Safety
// `out` must be null or valid for a pointer write.
enum PsStatus ps_config_new_regular(size_t n, double radius, struct PsConfig **out);

// Arbitrary distinct base angles.
//
// # Safety
// `angles` must point to `len` readable doubles; `out` must be null or
// valid for a pointer write.
enum PsStatus ps_config_new_angles(const double *angles,
                                   size_t len,
                                   double radius,
                                   struct PsConfig **out);

// # Safety
// `cfg` must be null or a handle from a `ps_config_new_*` call that has not
// been freed.
void ps_config_free(struct PsConfig *cfg);

// Number of base points, or 0 for a null handle.
//
// # Safety
// `cfg` must be null or a live handle.
size_t ps_config_len(const struct PsConfig *cfg);

// Nonzero when the base points form a regular polygon.
//
// # Safety
// `cfg` must be null or a live handle.
uint8_t ps_config_is_regular(const struct PsConfig *cfg);

// `Σ |X P_i|^λ` at probe angle `x`; poles give `inf`.
//
// # Safety
// `cfg` must be a live handle and `out` valid for a write.
enum PsStatus ps_power_sum(const struct PsConfig *cfg, double lambda, double x, double *out);

// Derivative of the sum in the probe angle.
//
// # Safety
// `cfg` must be a live handle and `out` valid for a write.
enum PsStatus ps_d_power_sum_dx(const struct PsConfig *cfg, double lambda, double x, double *out);

// Distance from the probe at angle `x` on the circle of radius `radius` to
// the unit-circle point at angle `theta`.
//
// # Safety
// `out` must be valid for a write.
enum PsStatus ps_chord_distance(double radius, double x, double theta, double *out);

// Closed form for the isosceles family, `x ∈ (0, 2π/3]`.
//
// # Safety
// `out` must be valid for a write.
enum PsStatus ps_isosceles_f(double x, double lambda, double *out);

// The constant value of `Σ |X P_i|^{2k}` over a regular `n`-gon,
// `1 ≤ k ≤ n − 1`.
//
// # Safety
// `out` must be valid for a write.
enum PsStatus ps_even_power_constant(size_t n, double radius, size_t k, double *out);

// Brute-force global extremum over the probe circle.
//
// # Safety
// `cfg` must be a live handle and `out` valid for a write.
enum PsStatus ps_oracle_optimize(const struct PsConfig *cfg,
                                 double lambda,
                                 enum PsExtremum kind,
                                 double angular_tol,
                                 struct PsOracleResult *out);

// Predicted minimum and maximum for a regular configuration.
//
// # Safety
// `cfg` must be a live handle; both outputs valid for writes.
enum PsStatus ps_predict_extrema(const struct PsConfig *cfg,
                                 double lambda,
                                 struct PsExtremumReport *out_min,
                                 struct PsExtremumReport *out_max);

// Sharp bound for three points on the unit circle.
//
// # Safety
// Both outputs must be valid for writes.
enum PsStatus ps_triangle_bound(double lambda, double *out_bound, enum PsBoundSense *out_sense);

// Regime of `λ` for `n` points. `out_m` receives the band index for
// `BandBetweenEvens` and 0 otherwise.
//
// # Safety
// Both outputs must be valid for writes.
enum PsStatus ps_classify_regime(size_t n,
                                 double lambda,
                                 enum PsRegimeKind *out_kind,
                                 uint32_t *out_m);

#endif  /* POWERSUM_H */
