#include "advtext.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include <json.hpp>

#include "advtext/attack.hpp"
#include "advtext/candidates.hpp"
#include "advtext/classifier.hpp"
#include "advtext/errors.hpp"
#include "advtext/evaluation.hpp"
#include "advtext/fixture.hpp"
#include "advtext/json_io.hpp"
#include "advtext/lexicons.hpp"
#include "advtext/scoring.hpp"
#include "advtext/textcore.hpp"

using nlohmann::json;

struct advtext_lexicons {
  advtext::Lexicons lex;
};
struct advtext_corpus {
  advtext::Corpus corpus;
};
struct advtext_model {
  advtext::Model model;
};
struct advtext_keywords {
  advtext::KeywordSets ks;
};
struct advtext_results {
  std::vector<advtext::AttackResult> results;
  std::string config_echo;  // JSON of the attack config used
};

namespace {

thread_local std::string g_last_error;

advtext_status fail(advtext_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
advtext_status guarded(Fn&& fn) {
  try {
    fn();
    return ADVTEXT_OK;
  } catch (const advtext::Error& e) {
    return fail(static_cast<advtext_status>(advtext::exit_class(e.code())),
                e.what());
  } catch (const std::exception& e) {
    return fail(ADVTEXT_ERR_RUNTIME, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void check_keys(const json& j, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) { ok = true; break; }
    }
    if (!ok) {
      throw advtext::Error(advtext::Errc::ConfigError,
                           "unknown config key: " + key);
    }
  }
}

advtext::ModelConfig parse_model_config(const char* config_json) {
  advtext::ModelConfig cfg;
  if (!config_json || !*config_json) return cfg;
  json j;
  try {
    j = json::parse(config_json);
  } catch (const json::exception& e) {
    throw advtext::Error(advtext::Errc::ConfigError,
                         std::string("bad model config JSON: ") + e.what());
  }
  check_keys(j, {"hidden_units", "epochs", "learning_rate", "batch_size",
                 "seed", "l2", "architecture", "conv_window"});
  cfg.hidden_units = j.value("hidden_units", cfg.hidden_units);
  cfg.epochs = j.value("epochs", cfg.epochs);
  cfg.learning_rate = j.value("learning_rate", cfg.learning_rate);
  cfg.batch_size = j.value("batch_size", cfg.batch_size);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.l2 = j.value("l2", cfg.l2);
  if (j.contains("architecture")) {
    cfg.architecture = advtext::arch_from_string(j["architecture"].get<std::string>());
  }
  cfg.conv_window = j.value("conv_window", cfg.conv_window);
  if (cfg.hidden_units <= 0 || cfg.epochs <= 0 || cfg.learning_rate <= 0 ||
      cfg.batch_size <= 0 || cfg.l2 < 0 || cfg.conv_window <= 0) {
    throw advtext::Error(advtext::Errc::ConfigError,
                         "model config values out of range");
  }
  return cfg;
}

advtext::AttackConfig parse_attack_config(const char* config_json) {
  advtext::AttackConfig cfg;
  if (!config_json || !*config_json) return cfg;
  json j;
  try {
    j = json::parse(config_json);
  } catch (const json::exception& e) {
    throw advtext::Error(advtext::Errc::ConfigError,
                         std::string("bad attack config JSON: ") + e.what());
  }
  check_keys(j, {"method", "grad_scalar", "max_changes", "adverb_threshold",
                 "rerank_each_step", "use_genre_keywords",
                 "require_pos_match_all"});
  if (j.contains("method")) {
    cfg.method = advtext::score_method_from_string(j["method"].get<std::string>());
  }
  if (j.contains("grad_scalar")) {
    cfg.grad_scalar =
        advtext::grad_scalar_from_string(j["grad_scalar"].get<std::string>());
  }
  cfg.max_changes = j.value("max_changes", cfg.max_changes);
  cfg.adverb_threshold = j.value("adverb_threshold", cfg.adverb_threshold);
  cfg.rerank_each_step = j.value("rerank_each_step", cfg.rerank_each_step);
  cfg.use_genre_keywords = j.value("use_genre_keywords", cfg.use_genre_keywords);
  cfg.require_pos_match_all =
      j.value("require_pos_match_all", cfg.require_pos_match_all);
  if (cfg.max_changes <= 0 || cfg.adverb_threshold <= 0 ||
      cfg.adverb_threshold > 1) {
    throw advtext::Error(advtext::Errc::ConfigError,
                         "attack config values out of range");
  }
  return cfg;
}

}  // namespace

extern "C" {

const char* advtext_last_error(void) { return g_last_error.c_str(); }

void advtext_string_free(char* s) { delete[] s; }

advtext_status advtext_lexicons_open(const char* embeddings_path,
                                     const char* dictionary_path,
                                     const char* thesaurus_path,
                                     const char* pos_lexicon_path,
                                     const char* stopwords_path,
                                     advtext_lexicons** out) {
  return guarded([&] {
    auto handle = std::make_unique<advtext_lexicons>();
    handle->lex.embeddings = advtext::load_embeddings(embeddings_path);
    handle->lex.dictionary = advtext::load_dictionary(dictionary_path);
    handle->lex.thesaurus = advtext::load_thesaurus(thesaurus_path);
    handle->lex.pos_lexicon = advtext::load_pos_lexicon(pos_lexicon_path);
    handle->lex.stopwords = advtext::load_stopwords(stopwords_path);
    *out = handle.release();
  });
}

void advtext_lexicons_close(advtext_lexicons* lex) { delete lex; }

advtext_status advtext_corpus_open_csv(const advtext_lexicons* lex,
                                       const char* path,
                                       advtext_corpus** out) {
  return guarded([&] {
    auto handle = std::make_unique<advtext_corpus>();
    handle->corpus = advtext::load_corpus_csv(path, lex->lex.pos_lexicon);
    *out = handle.release();
  });
}

advtext_status advtext_corpus_open_dir(const advtext_lexicons* lex,
                                       const char* root,
                                       advtext_corpus** out) {
  return guarded([&] {
    auto handle = std::make_unique<advtext_corpus>();
    handle->corpus = advtext::load_corpus_dir(root, lex->lex.pos_lexicon);
    *out = handle.release();
  });
}

advtext_status advtext_corpus_size(const advtext_corpus* corpus, size_t* out) {
  return guarded([&] { *out = corpus->corpus.documents.size(); });
}

void advtext_corpus_close(advtext_corpus* corpus) { delete corpus; }

advtext_status advtext_train(const advtext_lexicons* lex,
                             const advtext_corpus* corpus,
                             const char* model_config_json,
                             advtext_model** out) {
  return guarded([&] {
    auto cfg = parse_model_config(model_config_json);
    auto handle = std::make_unique<advtext_model>();
    handle->model = advtext::train(corpus->corpus, lex->lex.embeddings, cfg);
    *out = handle.release();
  });
}

advtext_status advtext_model_save(const advtext_model* model,
                                  const char* path) {
  return guarded([&] { advtext::save_model(model->model, path); });
}

advtext_status advtext_model_open(const char* path, advtext_model** out) {
  return guarded([&] {
    auto handle = std::make_unique<advtext_model>();
    handle->model = advtext::load_model(path);
    *out = handle.release();
  });
}

void advtext_model_close(advtext_model* model) { delete model; }

advtext_status advtext_keywords_build(const advtext_lexicons* lex,
                                      const advtext_corpus* corpus,
                                      int min_count, double ratio_threshold,
                                      advtext_keywords** out) {
  return guarded([&] {
    if (min_count <= 0 || ratio_threshold <= 1.0) {
      throw advtext::Error(advtext::Errc::ConfigError,
                           "need min_count > 0 and ratio_threshold > 1");
    }
    auto handle = std::make_unique<advtext_keywords>();
    handle->ks = advtext::build_keyword_sets(corpus->corpus, lex->lex.stopwords,
                                             min_count, ratio_threshold);
    *out = handle.release();
  });
}

advtext_status advtext_keywords_json(const advtext_keywords* kw,
                                     char** out_json) {
  return guarded([&] { *out_json = dup_string(advtext::keyword_sets_to_json(kw->ks)); });
}

void advtext_keywords_close(advtext_keywords* kw) { delete kw; }

advtext_status advtext_score_json(const advtext_model* model,
                                  const advtext_lexicons* lex,
                                  const advtext_corpus* corpus,
                                  const char* method, const char* grad_scalar,
                                  char** out_json) {
  return guarded([&] {
    auto m = advtext::score_method_from_string(method ? method : "loo");
    auto gs = advtext::grad_scalar_from_string(grad_scalar ? grad_scalar : "dot");
    std::ostringstream out;
    out << "[";
    bool first = true;
    for (const auto& doc : corpus->corpus.documents) {
      if (doc.tokens.empty()) continue;
      auto ranking =
          advtext::rank_words(model->model, lex->lex.embeddings, doc, m, gs);
      if (!first) out << ",";
      out << "\n" << advtext::ranking_to_json(ranking);
      first = false;
    }
    out << "\n]";
    *out_json = dup_string(out.str());
  });
}

advtext_status advtext_attack_run(const advtext_model* model,
                                  const advtext_lexicons* lex,
                                  const advtext_keywords* kw,
                                  const advtext_corpus* corpus,
                                  const char* attack_config_json,
                                  advtext_results** out) {
  return guarded([&] {
    auto cfg = parse_attack_config(attack_config_json);
    auto handle = std::make_unique<advtext_results>();
    handle->config_echo =
        (attack_config_json && *attack_config_json) ? attack_config_json : "{}";
    handle->results.reserve(corpus->corpus.documents.size());
    for (const auto& doc : corpus->corpus.documents) {
      handle->results.push_back(
          advtext::craft(model->model, lex->lex, kw->ks, doc, cfg));
    }
    *out = handle.release();
  });
}

advtext_status advtext_results_write_jsonl(const advtext_results* results,
                                           const char* path) {
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw advtext::Error(advtext::Errc::IoError,
                           std::string("cannot write file: ") + path);
    }
    advtext::results_to_jsonl(results->results, out);
  });
}

advtext_status advtext_results_open_jsonl(const advtext_lexicons* lex,
                                          const char* path,
                                          advtext_results** out) {
  return guarded([&] {
    auto handle = std::make_unique<advtext_results>();
    handle->results = advtext::results_from_jsonl(path, lex->lex.pos_lexicon);
    *out = handle.release();
  });
}

advtext_status advtext_results_count(const advtext_results* results,
                                     size_t* total, size_t* successes) {
  return guarded([&] {
    if (total) *total = results->results.size();
    if (successes) {
      size_t n = 0;
      for (const auto& r : results->results) n += r.success ? 1 : 0;
      *successes = n;
    }
  });
}

void advtext_results_close(advtext_results* results) { delete results; }

advtext_status advtext_evaluate_json(const advtext_model* model,
                                     const advtext_lexicons* lex,
                                     const advtext_corpus* corpus,
                                     const advtext_results* results,
                                     char** out_report_json) {
  return guarded([&] {
    auto report = advtext::evaluate_attack(model->model, lex->lex.embeddings,
                                           corpus->corpus, results->results);
    report.config_echo = results->config_echo;
    *out_report_json = dup_string(advtext::report_to_json(report));
  });
}

advtext_status advtext_report_markdown(const char* before_report_json,
                                       const char* after_report_json,
                                       char** out_markdown) {
  return guarded([&] {
    auto before = advtext::report_from_json(before_report_json);
    auto after = advtext::report_from_json(after_report_json);
    *out_markdown = dup_string(advtext::report_to_markdown(before, after));
  });
}

advtext_status advtext_report_histogram_csv(const char* report_json,
                                            char** out_csv) {
  return guarded([&] {
    auto report = advtext::report_from_json(report_json);
    *out_csv = dup_string(advtext::histogram_to_csv(report));
  });
}

advtext_status advtext_retrain(const advtext_model* model,
                               const advtext_lexicons* lex,
                               const advtext_keywords* kw,
                               const advtext_corpus* train_corpus,
                               const char* attack_config_json,
                               const char* model_config_json,
                               advtext_model** out_model,
                               size_t* out_augmented) {
  return guarded([&] {
    auto attack_cfg = parse_attack_config(attack_config_json);
    auto train_cfg = parse_model_config(model_config_json);
    auto outcome = advtext::retrain_with_adversarial(
        model->model, train_corpus->corpus, lex->lex, kw->ks, attack_cfg,
        train_cfg);
    auto handle = std::make_unique<advtext_model>();
    handle->model = std::move(outcome.model);
    if (out_augmented) *out_augmented = outcome.augmented;
    *out_model = handle.release();
  });
}

advtext_status advtext_fixture_write(const char* out_dir,
                                     unsigned long long seed) {
  return guarded([&] { advtext::fixture::write_fixture(out_dir, seed); });
}

}  // extern "C"
