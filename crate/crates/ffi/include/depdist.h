#ifndef DEPDIST_H
#define DEPDIST_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DdCriterion {
  DD_CRITERION_AIC = 0,
  DD_CRITERION_BIC = 1,
} DdCriterion;

/**
 * Model identifiers in the order 0.0, 0.1, 1 to 7.
 */
typedef enum DdModel {
  DD_MODEL_NULL = 0,
  DD_MODEL_EXTENDED_NULL = 1,
  DD_MODEL_GEOMETRIC = 2,
  DD_MODEL_TRUNCATED_GEOMETRIC = 3,
  DD_MODEL_TWO_REGIME_GEOMETRIC = 4,
  DD_MODEL_TRUNCATED_TWO_REGIME_GEOMETRIC = 5,
  DD_MODEL_TRUNCATED_ZETA = 6,
  DD_MODEL_ZETA_GEOMETRIC = 7,
  DD_MODEL_TRUNCATED_ZETA_GEOMETRIC = 8,
} DdModel;

typedef enum DdStatus {
  DD_STATUS_OK = 0,
  DD_STATUS_NULL_POINTER = 1,
  DD_STATUS_INVALID_ARGUMENT = 2,
  DD_STATUS_PARSE_ERROR = 3,
  DD_STATUS_INVALID_PARAMS = 4,
  /**
   * The model cannot be fitted to this sample.
   */
  DD_STATUS_NOT_FITTED = 5,
  /**
   * The quantity is undefined, e.g. Ω of a two-word sentence.
   */
  DD_STATUS_UNDEFINED = 6,
  DD_STATUS_PANIC = 7,
} DdStatus;

/**
 * Parsed CoNLL-U sentences.
 */
typedef struct DdCorpus DdCorpus;

/**
 * Frequency table of distances.
 */
typedef struct DdSample DdSample;

/**
 * Flat model parameters. Fields a model does not use are ignored on
 * input and zero on output. The extended null model is not representable.
 */
typedef struct DdParams {
  enum DdModel model;
  double q;
  double q1;
  double q2;
  double gamma;
  uint32_t d_star;
  uint32_t d_max;
} DdParams;

typedef struct DdFitResult {
  struct DdParams params;
  double log_likelihood;
  double aic;
  double bic;
  uint32_t k;
  bool converged;
} DdFitResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *dd_last_error_message(void);

struct DdSample *dd_sample_new(void);

void dd_sample_free(struct DdSample *sample);

/**
 * Adds `count` observations of distance `d >= 1`.
 */
enum DdStatus dd_sample_add(struct DdSample *sample, uint32_t d, uint64_t count);

/**
 * Total number of observations; 0 for a null handle.
 */
uint64_t dd_sample_total(const struct DdSample *sample);

uint64_t dd_sample_frequency(const struct DdSample *sample, uint32_t d);

/**
 * Draws `n` values from a model with the seeded ChaCha20 generator.
 */
enum DdStatus dd_sample_generate(const struct DdParams *params,
                                 uint64_t n,
                                 uint64_t seed,
                                 struct DdSample **out);

enum DdStatus dd_pmf(const struct DdParams *params, uint32_t d, double *out);

/**
 * Log-likelihood of `params` on `sample`; `-inf` when an observation
 * lies outside the support.
 */
enum DdStatus dd_log_likelihood(const struct DdParams *params,
                                const struct DdSample *sample,
                                double *out);

/**
 * Maximum likelihood fit of one model.
 */
enum DdStatus dd_fit(enum DdModel model, const struct DdSample *sample, struct DdFitResult *out);

/**
 * Fits models 0.0 and 1 to 7 and writes the best one by `criterion`.
 */
enum DdStatus dd_select(const struct DdSample *sample,
                        enum DdCriterion criterion,
                        struct DdFitResult *out);

/**
 * Parses CoNLL-U text. Malformed sentences are skipped.
 */
enum DdStatus dd_corpus_parse(const uint8_t *data, size_t len, struct DdCorpus **out);

void dd_corpus_free(struct DdCorpus *corpus);

/**
 * Number of sentences; 0 for a null handle.
 */
size_t dd_corpus_len(const struct DdCorpus *corpus);

/**
 * Number of words in sentence `i`; 0 when out of range.
 */
size_t dd_corpus_sentence_len(const struct DdCorpus *corpus, size_t i);

/**
 * Pooled distances of every sentence as a new sample.
 */
enum DdStatus dd_corpus_distances(const struct DdCorpus *corpus, struct DdSample **out);

enum DdStatus dd_corpus_omega(const struct DdCorpus *corpus, size_t i, double *out);

/**
 * Ω of a tree given 1-based heads with 0 for the root.
 */
enum DdStatus dd_omega_heads(const uint32_t *heads, size_t n, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEPDIST_H */
