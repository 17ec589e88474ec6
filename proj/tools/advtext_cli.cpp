// advtext command-line front end. Talks to the core exclusively through
// the C API in advtext.h.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "advtext.h"

namespace {

using nlohmann::json;

struct StatusError {
  advtext_status status;
  std::string message;
};

void check(advtext_status st) {
  if (st != ADVTEXT_OK) throw StatusError{st, advtext_last_error()};
}

template <typename T, void (*Close)(T*)>
struct Handle {
  T* ptr = nullptr;
  ~Handle() { if (ptr) Close(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using LexiconsHandle = Handle<advtext_lexicons, advtext_lexicons_close>;
using CorpusHandle = Handle<advtext_corpus, advtext_corpus_close>;
using ModelHandle = Handle<advtext_model, advtext_model_close>;
using KeywordsHandle = Handle<advtext_keywords, advtext_keywords_close>;
using ResultsHandle = Handle<advtext_results, advtext_results_close>;

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { advtext_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct Options {
  // resources
  std::string embeddings, dictionary, thesaurus, pos_lexicon, stopwords;
  // data
  std::string corpus, train_corpus, test_corpus;
  std::string model_path, out, out_dir = "out", results_path;
  // model config
  int hidden_units = 64, epochs = 10, batch_size = 32, conv_window = 3;
  double learning_rate = 0.05, l2 = 1e-4;
  std::uint64_t seed = 0;
  std::string arch = "mean-pool";
  // attack config
  std::string method = "loo", grad_scalar = "dot";
  int max_changes = 20;
  double adverb_threshold = 0.5;
  bool no_genre_keywords = false, rerank = false, pos_match_all = false;
  // keyword parameters
  int min_count = 5;
  double ratio_threshold = 3.0;
};

void add_resource_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--embeddings", opt.embeddings, "embedding table file")->required();
  cmd->add_option("--dictionary", opt.dictionary, "dictionary word list")->required();
  cmd->add_option("--thesaurus", opt.thesaurus, "thesaurus file")->required();
  cmd->add_option("--pos-lexicon", opt.pos_lexicon, "POS lexicon file")->required();
  cmd->add_option("--stopwords", opt.stopwords, "stopword list")->required();
}

void add_model_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--hidden-units", opt.hidden_units);
  cmd->add_option("--epochs", opt.epochs);
  cmd->add_option("--learning-rate", opt.learning_rate);
  cmd->add_option("--batch-size", opt.batch_size);
  cmd->add_option("--seed", opt.seed);
  cmd->add_option("--l2", opt.l2);
  cmd->add_option("--arch", opt.arch)->check(CLI::IsMember({"mean-pool", "conv"}));
  cmd->add_option("--conv-window", opt.conv_window);
}

void add_attack_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--method", opt.method)->check(CLI::IsMember({"loo", "grad"}));
  cmd->add_option("--grad-scalar", opt.grad_scalar)->check(CLI::IsMember({"dot", "l2"}));
  cmd->add_option("--max-changes", opt.max_changes);
  cmd->add_option("--adverb-threshold", opt.adverb_threshold);
  cmd->add_flag("--no-genre-keywords", opt.no_genre_keywords);
  cmd->add_flag("--rerank", opt.rerank);
  cmd->add_flag("--pos-match-all", opt.pos_match_all);
}

void add_keyword_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--min-count", opt.min_count);
  cmd->add_option("--ratio-threshold", opt.ratio_threshold);
}

std::string model_config_json(const Options& opt) {
  json j = {{"hidden_units", opt.hidden_units},
            {"epochs", opt.epochs},
            {"learning_rate", opt.learning_rate},
            {"batch_size", opt.batch_size},
            {"seed", opt.seed},
            {"l2", opt.l2},
            {"architecture", opt.arch},
            {"conv_window", opt.conv_window}};
  return j.dump();
}

std::string attack_config_json(const Options& opt) {
  json j = {{"method", opt.method},
            {"grad_scalar", opt.grad_scalar},
            {"max_changes", opt.max_changes},
            {"adverb_threshold", opt.adverb_threshold},
            {"rerank_each_step", opt.rerank},
            {"use_genre_keywords", !opt.no_genre_keywords},
            {"require_pos_match_all", opt.pos_match_all}};
  return j.dump();
}

void open_lexicons(const Options& opt, LexiconsHandle& lex) {
  check(advtext_lexicons_open(opt.embeddings.c_str(), opt.dictionary.c_str(),
                              opt.thesaurus.c_str(), opt.pos_lexicon.c_str(),
                              opt.stopwords.c_str(), lex.out()));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StatusError{ADVTEXT_ERR_RUNTIME, "cannot write " + path};
  out << content;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << "\n";
  } else {
    write_file(out_path, content);
  }
}

int cmd_train(const Options& opt) {
  LexiconsHandle lex;
  open_lexicons(opt, lex);
  CorpusHandle corpus;
  check(advtext_corpus_open_csv(lex.get(), opt.corpus.c_str(), corpus.out()));
  ModelHandle model;
  check(advtext_train(lex.get(), corpus.get(), model_config_json(opt).c_str(),
                      model.out()));
  check(advtext_model_save(model.get(), opt.out.c_str()));
  std::cout << "model written to " << opt.out << "\n";
  return 0;
}

int cmd_keywords(const Options& opt) {
  LexiconsHandle lex;
  open_lexicons(opt, lex);
  CorpusHandle corpus;
  check(advtext_corpus_open_csv(lex.get(), opt.corpus.c_str(), corpus.out()));
  KeywordsHandle kw;
  check(advtext_keywords_build(lex.get(), corpus.get(), opt.min_count,
                               opt.ratio_threshold, kw.out()));
  OwnedString out_json;
  check(advtext_keywords_json(kw.get(), &out_json.ptr));
  emit(opt.out, out_json.str());
  return 0;
}

int cmd_score(const Options& opt) {
  LexiconsHandle lex;
  open_lexicons(opt, lex);
  CorpusHandle corpus;
  check(advtext_corpus_open_csv(lex.get(), opt.corpus.c_str(), corpus.out()));
  ModelHandle model;
  check(advtext_model_open(opt.model_path.c_str(), model.out()));
  OwnedString out_json;
  check(advtext_score_json(model.get(), lex.get(), corpus.get(),
                           opt.method.c_str(), opt.grad_scalar.c_str(),
                           &out_json.ptr));
  emit(opt.out, out_json.str());
  return 0;
}

int cmd_attack(const Options& opt) {
  LexiconsHandle lex;
  open_lexicons(opt, lex);
  CorpusHandle corpus;
  check(advtext_corpus_open_csv(lex.get(), opt.corpus.c_str(), corpus.out()));
  const std::string kw_corpus_path =
      opt.train_corpus.empty() ? opt.corpus : opt.train_corpus;
  CorpusHandle kw_corpus;
  check(advtext_corpus_open_csv(lex.get(), kw_corpus_path.c_str(),
                                kw_corpus.out()));
  KeywordsHandle kw;
  check(advtext_keywords_build(lex.get(), kw_corpus.get(), opt.min_count,
                               opt.ratio_threshold, kw.out()));
  ModelHandle model;
  check(advtext_model_open(opt.model_path.c_str(), model.out()));
  ResultsHandle results;
  check(advtext_attack_run(model.get(), lex.get(), kw.get(), corpus.get(),
                           attack_config_json(opt).c_str(), results.out()));
  check(advtext_results_write_jsonl(results.get(), opt.out.c_str()));
  size_t total = 0, successes = 0;
  check(advtext_results_count(results.get(), &total, &successes));
  std::cout << successes << "/" << total << " documents perturbed; results in "
            << opt.out << "\n";
  return 0;
}

int cmd_evaluate(const Options& opt) {
  LexiconsHandle lex;
  open_lexicons(opt, lex);
  CorpusHandle corpus;
  check(advtext_corpus_open_csv(lex.get(), opt.corpus.c_str(), corpus.out()));
  ModelHandle model;
  check(advtext_model_open(opt.model_path.c_str(), model.out()));
  ResultsHandle results;
  check(advtext_results_open_jsonl(lex.get(), opt.results_path.c_str(),
                                   results.out()));
  OwnedString report;
  check(advtext_evaluate_json(model.get(), lex.get(), corpus.get(),
                              results.get(), &report.ptr));
  emit(opt.out, report.str());
  return 0;
}

int cmd_retrain(const Options& opt) {
  LexiconsHandle lex;
  open_lexicons(opt, lex);
  CorpusHandle corpus;
  check(advtext_corpus_open_csv(lex.get(), opt.corpus.c_str(), corpus.out()));
  KeywordsHandle kw;
  check(advtext_keywords_build(lex.get(), corpus.get(), opt.min_count,
                               opt.ratio_threshold, kw.out()));
  ModelHandle model;
  check(advtext_model_open(opt.model_path.c_str(), model.out()));
  ModelHandle retrained;
  size_t augmented = 0;
  check(advtext_retrain(model.get(), lex.get(), kw.get(), corpus.get(),
                        attack_config_json(opt).c_str(),
                        model_config_json(opt).c_str(), retrained.out(),
                        &augmented));
  check(advtext_model_save(retrained.get(), opt.out.c_str()));
  std::cout << "augmented with " << augmented
            << " adversarial samples; model written to " << opt.out << "\n";
  return 0;
}

int cmd_pipeline(const Options& opt) {
  namespace fs = std::filesystem;
  fs::create_directories(opt.out_dir);
  auto path = [&](const char* name) { return opt.out_dir + "/" + name; };

  LexiconsHandle lex;
  open_lexicons(opt, lex);
  CorpusHandle train_corpus, test_corpus;
  check(advtext_corpus_open_csv(lex.get(), opt.train_corpus.c_str(),
                                train_corpus.out()));
  check(advtext_corpus_open_csv(lex.get(), opt.test_corpus.c_str(),
                                test_corpus.out()));

  ModelHandle model;
  check(advtext_train(lex.get(), train_corpus.get(),
                      model_config_json(opt).c_str(), model.out()));
  check(advtext_model_save(model.get(), path("model.advtxt").c_str()));

  KeywordsHandle kw;
  check(advtext_keywords_build(lex.get(), train_corpus.get(), opt.min_count,
                               opt.ratio_threshold, kw.out()));

  ResultsHandle attacks;
  check(advtext_attack_run(model.get(), lex.get(), kw.get(), test_corpus.get(),
                           attack_config_json(opt).c_str(), attacks.out()));
  check(advtext_results_write_jsonl(attacks.get(), path("attacks.jsonl").c_str()));

  OwnedString report_before;
  check(advtext_evaluate_json(model.get(), lex.get(), test_corpus.get(),
                              attacks.get(), &report_before.ptr));
  write_file(path("report_before.json"), report_before.str());

  ModelHandle retrained;
  size_t augmented = 0;
  check(advtext_retrain(model.get(), lex.get(), kw.get(), train_corpus.get(),
                        attack_config_json(opt).c_str(),
                        model_config_json(opt).c_str(), retrained.out(),
                        &augmented));
  check(advtext_model_save(retrained.get(), path("model_retrained.advtxt").c_str()));

  ResultsHandle attacks_after;
  check(advtext_attack_run(retrained.get(), lex.get(), kw.get(),
                           test_corpus.get(), attack_config_json(opt).c_str(),
                           attacks_after.out()));
  OwnedString report_after;
  check(advtext_evaluate_json(retrained.get(), lex.get(), test_corpus.get(),
                              attacks_after.get(), &report_after.ptr));
  write_file(path("report_after.json"), report_after.str());

  OwnedString markdown;
  check(advtext_report_markdown(report_before.ptr, report_after.ptr,
                                &markdown.ptr));
  write_file(path("report.md"), markdown.str());
  OwnedString csv;
  check(advtext_report_histogram_csv(report_before.ptr, &csv.ptr));
  write_file(path("histogram.csv"), csv.str());

  std::cout << "pipeline complete; augmented with " << augmented
            << " adversarial samples; artifacts in " << opt.out_dir << "\n";
  return 0;
}

int cmd_fixture(const Options& opt) {
  check(advtext_fixture_write(opt.out_dir.c_str(), opt.seed));
  std::cout << "fixture written to " << opt.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adversarial text sample crafting toolkit"};
  app.require_subcommand(1);
  app.set_config("--config")->configurable(false);
  Options opt;

  auto* train = app.add_subcommand("train", "train the built-in classifier");
  add_resource_options(train, opt);
  add_model_options(train, opt);
  train->add_option("--corpus", opt.corpus)->required();
  train->add_option("--out", opt.out)->required();

  auto* keywords = app.add_subcommand("keywords", "emit distinctive keyword sets");
  add_resource_options(keywords, opt);
  add_keyword_options(keywords, opt);
  keywords->add_option("--corpus", opt.corpus)->required();
  keywords->add_option("--out", opt.out);

  auto* score = app.add_subcommand("score", "emit per-word contribution rankings");
  add_resource_options(score, opt);
  score->add_option("--model", opt.model_path)->required();
  score->add_option("--corpus", opt.corpus)->required();
  score->add_option("--method", opt.method)->check(CLI::IsMember({"loo", "grad"}));
  score->add_option("--grad-scalar", opt.grad_scalar)->check(CLI::IsMember({"dot", "l2"}));
  score->add_option("--out", opt.out);

  auto* attack = app.add_subcommand("attack", "craft adversarial samples");
  add_resource_options(attack, opt);
  add_attack_options(attack, opt);
  add_keyword_options(attack, opt);
  attack->add_option("--model", opt.model_path)->required();
  attack->add_option("--corpus", opt.corpus)->required();
  attack->add_option("--train-corpus", opt.train_corpus,
                     "corpus for keyword extraction (default: --corpus)");
  attack->add_option("--out", opt.out)->required();
  attack->add_option("--seed", opt.seed);

  auto* evaluate = app.add_subcommand("evaluate", "evaluate attack results");
  add_resource_options(evaluate, opt);
  evaluate->add_option("--model", opt.model_path)->required();
  evaluate->add_option("--corpus", opt.corpus)->required();
  evaluate->add_option("--results", opt.results_path)->required();
  evaluate->add_option("--out", opt.out);

  auto* retrain = app.add_subcommand("retrain", "adversarial retraining");
  add_resource_options(retrain, opt);
  add_model_options(retrain, opt);
  add_attack_options(retrain, opt);
  add_keyword_options(retrain, opt);
  retrain->add_option("--model", opt.model_path)->required();
  retrain->add_option("--corpus", opt.corpus)->required();
  retrain->add_option("--out", opt.out)->required();

  auto* pipeline = app.add_subcommand(
      "pipeline", "train, attack, evaluate, retrain, re-evaluate");
  add_resource_options(pipeline, opt);
  add_model_options(pipeline, opt);
  add_attack_options(pipeline, opt);
  add_keyword_options(pipeline, opt);
  pipeline->add_option("--train", opt.train_corpus)->required();
  pipeline->add_option("--test", opt.test_corpus)->required();
  pipeline->add_option("--out-dir", opt.out_dir);

  auto* fixture = app.add_subcommand("fixture", "write the demo corpus and embeddings");
  fixture->add_option("--out-dir", opt.out_dir)->required();
  fixture->add_option("--seed", opt.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // config error
  }

  try {
    if (*train) return cmd_train(opt);
    if (*keywords) return cmd_keywords(opt);
    if (*score) return cmd_score(opt);
    if (*attack) return cmd_attack(opt);
    if (*evaluate) return cmd_evaluate(opt);
    if (*retrain) return cmd_retrain(opt);
    if (*pipeline) return cmd_pipeline(opt);
    if (*fixture) return cmd_fixture(opt);
  } catch (const StatusError& e) {
    std::cerr << "error: " << e.message << "\n";
    return static_cast<int>(e.status);
  }
  return 0;
}
