/* advtext — adversarial text sample crafting toolkit, C API.
 *
 * All functions return an advtext_status; on failure a human-readable
 * message is available from advtext_last_error() (thread-local). Handles
 * are opaque and must be released with their matching *_close function.
 * Strings returned through char** out-parameters are heap-allocated and
 * must be released with advtext_string_free().
 */
#ifndef ADVTEXT_H
#define ADVTEXT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum advtext_status {
  ADVTEXT_OK = 0,
  ADVTEXT_ERR_CONFIG = 1,
  ADVTEXT_ERR_DATA = 2,
  ADVTEXT_ERR_RUNTIME = 3
} advtext_status;

typedef struct advtext_lexicons advtext_lexicons;
typedef struct advtext_corpus advtext_corpus;
typedef struct advtext_model advtext_model;
typedef struct advtext_keywords advtext_keywords;
typedef struct advtext_results advtext_results;

const char* advtext_last_error(void);
void advtext_string_free(char* s);

/* --- static word resources --------------------------------------------- */

advtext_status advtext_lexicons_open(const char* embeddings_path,
                                     const char* dictionary_path,
                                     const char* thesaurus_path,
                                     const char* pos_lexicon_path,
                                     const char* stopwords_path,
                                     advtext_lexicons** out);
void advtext_lexicons_close(advtext_lexicons* lex);

/* --- corpora ------------------------------------------------------------ */

advtext_status advtext_corpus_open_csv(const advtext_lexicons* lex,
                                       const char* path, advtext_corpus** out);
advtext_status advtext_corpus_open_dir(const advtext_lexicons* lex,
                                       const char* root, advtext_corpus** out);
advtext_status advtext_corpus_size(const advtext_corpus* corpus, size_t* out);
void advtext_corpus_close(advtext_corpus* corpus);

/* --- classifier ---------------------------------------------------------
 * model_config_json keys (all optional): hidden_units, epochs,
 * learning_rate, batch_size, seed, l2, architecture ("mean-pool"|"conv"),
 * conv_window. Unknown keys are a config error.
 */

advtext_status advtext_train(const advtext_lexicons* lex,
                             const advtext_corpus* corpus,
                             const char* model_config_json,
                             advtext_model** out);
advtext_status advtext_model_save(const advtext_model* model,
                                  const char* path);
advtext_status advtext_model_open(const char* path, advtext_model** out);
void advtext_model_close(advtext_model* model);

/* --- keyword sets ------------------------------------------------------- */

advtext_status advtext_keywords_build(const advtext_lexicons* lex,
                                      const advtext_corpus* corpus,
                                      int min_count, double ratio_threshold,
                                      advtext_keywords** out);
advtext_status advtext_keywords_json(const advtext_keywords* kw,
                                     char** out_json);
void advtext_keywords_close(advtext_keywords* kw);

/* --- scoring ------------------------------------------------------------
 * method: "loo" or "grad"; grad_scalar: "dot" or "l2".
 * Emits a JSON array, one entry per document, each with the per-word
 * contribution ranking.
 */

advtext_status advtext_score_json(const advtext_model* model,
                                  const advtext_lexicons* lex,
                                  const advtext_corpus* corpus,
                                  const char* method, const char* grad_scalar,
                                  char** out_json);

/* --- attack -------------------------------------------------------------
 * attack_config_json keys (all optional): method, grad_scalar,
 * max_changes, adverb_threshold, rerank_each_step, use_genre_keywords,
 * require_pos_match_all.
 */

advtext_status advtext_attack_run(const advtext_model* model,
                                  const advtext_lexicons* lex,
                                  const advtext_keywords* kw,
                                  const advtext_corpus* corpus,
                                  const char* attack_config_json,
                                  advtext_results** out);
advtext_status advtext_results_write_jsonl(const advtext_results* results,
                                           const char* path);
advtext_status advtext_results_open_jsonl(const advtext_lexicons* lex,
                                          const char* path,
                                          advtext_results** out);
advtext_status advtext_results_count(const advtext_results* results,
                                     size_t* total, size_t* successes);
void advtext_results_close(advtext_results* results);

/* --- evaluation and retraining ------------------------------------------ */

advtext_status advtext_evaluate_json(const advtext_model* model,
                                     const advtext_lexicons* lex,
                                     const advtext_corpus* corpus,
                                     const advtext_results* results,
                                     char** out_report_json);
advtext_status advtext_report_markdown(const char* before_report_json,
                                       const char* after_report_json,
                                       char** out_markdown);
advtext_status advtext_report_histogram_csv(const char* report_json,
                                            char** out_csv);

advtext_status advtext_retrain(const advtext_model* model,
                               const advtext_lexicons* lex,
                               const advtext_keywords* kw,
                               const advtext_corpus* train_corpus,
                               const char* attack_config_json,
                               const char* model_config_json,
                               advtext_model** out_model,
                               size_t* out_augmented);

/* --- demo fixture ------------------------------------------------------- */

advtext_status advtext_fixture_write(const char* out_dir,
                                     unsigned long long seed);

#ifdef __cplusplus
}
#endif

#endif /* ADVTEXT_H */
