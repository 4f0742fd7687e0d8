#ifndef HYPERBOLICA_H
#define HYPERBOLICA_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define HB_MERGE_DIAGONAL 0

#define HB_MERGE_E1_FIRST 1

#define HB_MERGE_E2_FIRST 2

#define HB_TAGS_LEFT 0

#define HB_TAGS_RIGHT 1

#define HB_TAGS_MIDPOINT 2

#define HB_MODE_PAPER_ABS 0

#define HB_MODE_SIGNED 1

typedef enum HbOrder {
  HB_ORDER_LESS = 0,
  HB_ORDER_STRICTLY_LESS = 1,
  HB_ORDER_EQUAL = 2,
  HB_ORDER_GREATER = 3,
  HB_ORDER_STRICTLY_GREATER = 4,
  HB_ORDER_INCOMPARABLE = 5,
} HbOrder;

typedef enum HbStatus {
  HB_STATUS_OK = 0,
  HB_STATUS_NULL_POINTER = 1,
  HB_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A partition or interval failed validation.
   */
  HB_STATUS_VALIDATION_FAILED = 3,
  /**
   * An expression did not parse.
   */
  HB_STATUS_SYNTAX_ERROR = 4,
  /**
   * Division by zero or overflow while evaluating a function.
   */
  HB_STATUS_EVALUATION_ERROR = 5,
  /**
   * The result was written but the estimator did not settle.
   */
  HB_STATUS_NOT_CONVERGED = 6,
  HB_STATUS_ZERO_DIVISOR = 7,
  HB_STATUS_PANIC = 8,
} HbStatus;

/**
 * Opaque natural function `F1(x) e1 + F2(y) e2`.
 */
typedef struct HbNaturalFunction HbNaturalFunction;

/**
 * Opaque validated strong partition.
 */
typedef struct HbPartition HbPartition;

/**
 * A hyperbolic number by its coefficients on the idempotent basis.
 */
typedef struct HbHyperbolic {
  double e1;
  double e2;
} HbHyperbolic;

typedef struct HbVariation {
  struct HbHyperbolic value;
  size_t partitions_used;
  bool converged;
  bool lower_bound_only;
} HbVariation;

typedef struct HbIntegral {
  struct HbHyperbolic value;
  struct HbHyperbolic error_estimate;
  struct HbHyperbolic tag_gap;
  size_t refinements;
  bool converged;
} HbIntegral;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or an empty string. Valid
 * until the next failing call on the same thread.
 */
const char *hb_last_error_message(void);

/**
 * Stable code of the last failure on this thread, such as
 * `"LengthMismatch"`, or an empty string.
 */
const char *hb_last_error_code(void);

struct HbHyperbolic hb_from_canonical(double t, double s);

struct HbHyperbolic hb_add(struct HbHyperbolic x, struct HbHyperbolic y);

struct HbHyperbolic hb_mul(struct HbHyperbolic x, struct HbHyperbolic y);

struct HbHyperbolic hb_metric(struct HbHyperbolic x, struct HbHyperbolic y);

enum HbOrder hb_compare(struct HbHyperbolic x, struct HbHyperbolic y);

enum HbStatus hb_inverse(struct HbHyperbolic x, struct HbHyperbolic *out);

/**
 * Parses `f1` (in `x`) and `f2` (in `y`).
 */
enum HbStatus hb_natural_new(const char *f1, const char *f2, struct HbNaturalFunction **out);

struct HbNaturalFunction *hb_natural_identity(void);

enum HbStatus hb_natural_eval(const struct HbNaturalFunction *f,
                              struct HbHyperbolic xi,
                              struct HbHyperbolic *out);

void hb_natural_free(struct HbNaturalFunction *f);

/**
 * Validates `points` as a strong partition of `[lo, hi]`.
 */
enum HbStatus hb_partition_validate(struct HbHyperbolic lo,
                                    struct HbHyperbolic hi,
                                    const struct HbHyperbolic *points,
                                    size_t len,
                                    struct HbPartition **out);

/**
 * Merges two strictly increasing real partitions into a strong one.
 */
enum HbStatus hb_partition_merge(const double *p,
                                 size_t p_len,
                                 const double *q,
                                 size_t q_len,
                                 int mode,
                                 struct HbPartition **out);

enum HbStatus hb_partition_uniform(struct HbHyperbolic lo,
                                   struct HbHyperbolic hi,
                                   size_t n,
                                   struct HbPartition **out);

/**
 * Number of points, or 0 for a null handle.
 */
size_t hb_partition_len(const struct HbPartition *p);

/**
 * Copies up to `cap` points into `buf` and returns the total count.
 */
size_t hb_partition_points(const struct HbPartition *p, struct HbHyperbolic *buf, size_t cap);

struct HbHyperbolic hb_partition_diameter(const struct HbPartition *p);

void hb_partition_free(struct HbPartition *p);

enum HbStatus hb_variation_sum(const struct HbNaturalFunction *f,
                               const struct HbPartition *p,
                               struct HbHyperbolic *out);

/**
 * Total variation on `[lo, hi]`. Returns `NotConverged` with the lower
 * bound written when refinement ran out of depth.
 */
enum HbStatus hb_total_variation(const struct HbNaturalFunction *f,
                                 struct HbHyperbolic lo,
                                 struct HbHyperbolic hi,
                                 double tol,
                                 size_t max_depth,
                                 struct HbVariation *out);

/**
 * `∫ F d_k G` on `[lo, hi]`. `tags` is one of the `HB_TAGS_*` constants and
 * `mode` one of `HB_MODE_*`.
 */
enum HbStatus hb_rs_integral(const struct HbNaturalFunction *f,
                             const struct HbNaturalFunction *g,
                             struct HbHyperbolic lo,
                             struct HbHyperbolic hi,
                             double tol,
                             int tags,
                             int mode,
                             size_t max_refinements,
                             struct HbIntegral *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HYPERBOLICA_H */
