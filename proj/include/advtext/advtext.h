/* advtext — adversarially fine-tuned text classification pipeline.
 *
 * C interface of the shared library. Every fallible function returns an
 * advt_status; on any nonzero status advt_last_error() describes the
 * failure. Strings returned through out-parameters are freshly allocated
 * and must be released with advt_string_free(). Handles are opaque and
 * must be released with their matching *_free function. Handles are not
 * internally synchronized: share a handle across threads only for
 * concurrent reads.
 */
#ifndef ADVTEXT_H
#define ADVTEXT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum advt_status {
  ADVT_OK = 0,
  ADVT_ERR_ARGUMENT = 1,   /* bad arguments or configuration values */
  ADVT_ERR_PARSE = 2,      /* malformed input data */
  ADVT_ERR_IO = 3,         /* file system problems */
  ADVT_ERR_DIVERGENCE = 4, /* training produced non-finite values */
  ADVT_ERR_INTERNAL = 5    /* anything unexpected */
} advt_status;

/* "advtext <version>". Static storage; do not free. */
const char* advt_version(void);

/* Message of the most recent failure on the calling thread. Valid until
 * the next failing call on the same thread; do not free. */
const char* advt_last_error(void);

/* Releases any char* an advtext function returned. NULL is a no-op. */
void advt_string_free(char* s);

/* ---------------- normalization ---------------- */

/* Normalizes one UTF-8 string. rules_csv names the rules to apply,
 * comma-separated (see the tool documentation for the inventory); NULL
 * applies all of them. */
advt_status advt_normalize_text(const char* text, const char* rules_csv, int max_punct_run,
                                char** out);

/* ---------------- labeled corpora ---------------- */

typedef struct advt_corpus advt_corpus;

/* Loads a labeled TSV (header "id<TAB>text<TAB>label"); task is "1a"
 * (type of hate) or "1b" (target group) and fixes the label inventory. */
advt_status advt_corpus_load_tsv(const char* path, const char* task, advt_corpus** out);

advt_status advt_corpus_size(const advt_corpus* corpus, int64_t* out);

/* Rewrites every text in place with the normalizer. */
advt_status advt_corpus_normalize(advt_corpus* corpus, const char* rules_csv, int max_punct_run);

/* Serializes the corpus back to the TSV format. */
advt_status advt_corpus_to_tsv(const advt_corpus* corpus, char** out);

/* Per-class counts as JSON:
 * {"task","total","classes":[{"name","count","percent"}]}. */
advt_status advt_corpus_distribution_json(const advt_corpus* corpus, char** out);

void advt_corpus_free(advt_corpus* corpus);

/* ---------------- vocabularies ---------------- */

typedef struct advt_vocab advt_vocab;

/* Whitespace-token vocabulary of the corpus: tokens seen at least
 * min_freq times, most frequent first, capped at max_size entries
 * including the reserved PAD and UNK ids. */
advt_status advt_vocab_build(const advt_corpus* corpus, int min_freq, int max_size,
                             advt_vocab** out);
advt_status advt_vocab_save(const advt_vocab* vocab, const char* path);
advt_status advt_vocab_load(const char* path, advt_vocab** out);
advt_status advt_vocab_size(const advt_vocab* vocab, int* out);
void advt_vocab_free(advt_vocab* vocab);

/* ---------------- training ---------------- */

typedef struct advt_train_options {
  const char* task;          /* "1a" or "1b" */
  int normalize;             /* nonzero: normalize text before everything else */
  const char* rules_csv;     /* NULL = all rules */
  int max_punct_run;         /* punctuation-run cap for the normalizer */
  int vocab_min_freq;
  int vocab_max_size;
  int folds;                 /* k of the stratified k-fold plan */
  int embed_dim;
  int hidden_dim;
  int max_len;               /* tokens kept per example */
  uint64_t seed;             /* single seed; fold/init/shuffle streams derive from it */
  int epochs;
  int batch_size;
  double learning_rate;
  double momentum;
  double epsilon;            /* FGSM perturbation radius */
  double alpha;              /* weight of the clean loss in the combined loss */
  const char* fgsm_schedule; /* "always", "alternate", or "never" */
  int jobs;                  /* threads for fold training; never changes results */
} advt_train_options;

/* Fills options with the documented defaults. */
void advt_train_options_init(advt_train_options* options);

/* Trains a k-fold ensemble from a labeled TSV. out_dir receives
 * manifest.json, vocab.txt, member_<fold>.bin per fold, and
 * training_report.json; nothing is written elsewhere. *report_json
 * (optional, may be NULL) receives the training report. */
advt_status advt_train(const char* corpus_path, const char* out_dir,
                       const advt_train_options* options, char** report_json);

/* Re-runs a recorded manifest. With the corpus unchanged, the artifacts
 * written to out_dir are byte-for-byte those of the original run. */
advt_status advt_train_from_manifest(const char* manifest_path, const char* out_dir, int jobs,
                                     char** report_json);

/* ---------------- ensembles ---------------- */

typedef struct advt_ensemble advt_ensemble;

/* Loads an ensemble directory produced by advt_train. */
advt_status advt_ensemble_load(const char* dir, advt_ensemble** out);
void advt_ensemble_free(advt_ensemble* ensemble);

/* normalize_mode for scoring and prediction:
 *   -1 follow the ensemble's manifest, 0 force off, 1 force on. */

/* Scores a labeled TSV. *report_json receives the evaluation report;
 * *table (optional, may be NULL) a human-readable summary. */
advt_status advt_evaluate(const advt_ensemble* ensemble, const char* corpus_path,
                          int normalize_mode, char** report_json, char** table);

/* Classifies a 2-column TSV (header "id<TAB>text"). *out receives a TSV
 * with header "id<TAB>label<TAB>probability", rows in input order;
 * probability is the ensemble's mean softmax mass on the predicted
 * class, printed with 6 decimals. */
advt_status advt_predict_tsv(const advt_ensemble* ensemble, const char* input_path,
                             int normalize_mode, char** out);

#ifdef __cplusplus
}
#endif

#endif /* ADVTEXT_H */
