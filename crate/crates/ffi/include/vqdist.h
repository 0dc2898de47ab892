#ifndef VQDIST_H
#define VQDIST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VqStatus {
  VQ_STATUS_OK = 0,
  VQ_STATUS_NULL_POINTER = 1,
  VQ_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Output buffer length does not match the required size.
   */
  VQ_STATUS_BUFFER_SIZE = 3,
  VQ_STATUS_INVALID_CIRCUIT = 4,
  /**
   * KL support mismatch or a non-finite cost during training.
   */
  VQ_STATUS_NUMERICAL = 5,
  VQ_STATUS_PANIC = 6,
} VqStatus;

typedef enum VqTarget {
  VQ_TARGET_UNIFORM = 0,
  VQ_TARGET_NORMAL = 1,
  /**
   * `param` is the success probability.
   */
  VQ_TARGET_BINOMIAL = 2,
  /**
   * `param` is the rate.
   */
  VQ_TARGET_POISSON = 3,
} VqTarget;

typedef enum VqCost {
  VQ_COST_LSE = 0,
  VQ_COST_KL = 1,
  VQ_COST_JS = 2,
} VqCost;

typedef enum VqInit {
  VQ_INIT_ZEROS = 0,
  VQ_INIT_UNIFORM_ANGLES = 1,
} VqInit;

/**
 * Opaque circuit handle.
 */
typedef struct VqCircuit VqCircuit;

/**
 * Opaque training result handle.
 */
typedef struct VqTrace VqTrace;

typedef struct VqTrainConfig {
  double stepsize;
  size_t iterations;
  double momentum;
  enum VqCost cost;
  enum VqInit init;
  uint64_t seed;
} VqTrainConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * failing call on the same thread.
 */
const char *vq_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *vq_version(void);

/**
 * Number of circuits in the built-in catalog; ids run from 1.
 */
uint32_t vq_catalog_size(void);

/**
 * Builds catalog circuit `id` into `*out`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum VqStatus vq_catalog_get(uint32_t id, struct VqCircuit **out);

/**
 * Parses an ansatz JSON document into `*out`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum VqStatus vq_circuit_from_json(const char *json, struct VqCircuit **out);

/**
 * # Safety
 * `c` must be null or a handle from this library not yet freed.
 */
void vq_circuit_free(struct VqCircuit *c);

/**
 * Qubit count, or 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
size_t vq_circuit_n_qubits(const struct VqCircuit *c);

/**
 * Trainable parameter count, or 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
size_t vq_circuit_n_params(const struct VqCircuit *c);

/**
 * Writes the `2^n` outcome probabilities at `params` into `probs`.
 *
 * # Safety
 * `params` must hold `n_params` values and `probs` `probs_len` slots.
 */
enum VqStatus vq_evaluate(const struct VqCircuit *c,
                          const double *params,
                          size_t n_params,
                          double *probs,
                          size_t probs_len);

/**
 * Writes the target pmf over `2^n_qubits` outcomes into `out`. `param` is
 * ignored for uniform and normal targets.
 *
 * # Safety
 * `out` must hold `out_len` slots.
 */
enum VqStatus vq_target_pmf(enum VqTarget kind,
                            double param,
                            size_t n_qubits,
                            double *out,
                            size_t out_len);

/**
 * `cost(P, Q)` over two arrays of length `len`.
 *
 * # Safety
 * `p` and `q` must hold `len` values; `out` must be writable.
 */
enum VqStatus vq_cost(enum VqCost kind, const double *p, const double *q, size_t len, double *out);

/**
 * Parameter-shift gradient of the cost against `target` at `params`.
 *
 * # Safety
 * Array arguments must hold the stated number of values.
 */
enum VqStatus vq_cost_gradient(const struct VqCircuit *c,
                               const double *params,
                               size_t n_params,
                               enum VqCost kind,
                               const double *target,
                               size_t target_len,
                               double *grad,
                               size_t grad_len);

/**
 * Default training settings: stepsize 0.1, 1000 iterations, no momentum,
 * JS cost, uniform random angles from seed 0.
 */
struct VqTrainConfig vq_train_config_default(void);

/**
 * Trains `c` against `target` and stores the result in `*out`.
 *
 * # Safety
 * `target` must hold `target_len` values; `config` and `out` must be valid.
 */
enum VqStatus vq_train(const struct VqCircuit *c,
                       const double *target,
                       size_t target_len,
                       const struct VqTrainConfig *config,
                       struct VqTrace **out);

/**
 * # Safety
 * `t` must be null or a handle from [`vq_train`] not yet freed.
 */
void vq_trace_free(struct VqTrace *t);

/**
 * Final cost, or NaN for a null handle.
 *
 * # Safety
 * `t` must be null or a live handle.
 */
double vq_trace_final_cost(const struct VqTrace *t);

/**
 * Length of the cost history (iterations + 1).
 *
 * # Safety
 * `t` must be null or a live handle.
 */
size_t vq_trace_history_len(const struct VqTrace *t);

/**
 * # Safety
 * `out` must hold `len` slots.
 */
enum VqStatus vq_trace_cost_history(const struct VqTrace *t, double *out, size_t len);

/**
 * # Safety
 * `out` must hold `len` slots.
 */
enum VqStatus vq_trace_final_params(const struct VqTrace *t, double *out, size_t len);

/**
 * # Safety
 * `out` must hold `len` slots.
 */
enum VqStatus vq_trace_final_dist(const struct VqTrace *t, double *out, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VQDIST_H */
