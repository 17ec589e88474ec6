#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "advtext/attack.hpp"
#include "advtext/classifier.hpp"

namespace advtext {

// Cosine similarity of the mean embedding of non-OTHER tokens; 0 when
// either side is empty (or embeds to the zero vector).
double semantic_similarity(const Document& a, const Document& b,
                           const EmbeddingTable& table);

struct EvalReport {
  double accuracy_original = 0;
  double accuracy_adversarial = 0;
  double perturbed_fraction = 0;
  double mean_similarity = 0;  // over successful attacks; 0 when none
  double mean_changes = 0;     // over successful attacks; 0 when none
  std::map<int, int> changes_histogram;  // edit count -> successful samples
  std::string config_echo;               // JSON string
};

// Failed attacks contribute their unmodified document to the adversarial
// accuracy; similarity and edit counts average over successes only.
EvalReport evaluate_attack(const Model& model, const EmbeddingTable& table,
                           const Corpus& corpus,
                           const std::vector<AttackResult>& results);

struct RetrainOutcome {
  Model model;
  std::size_t augmented = 0;  // successful adversarial training samples added
};

// Crafts adversarial counterparts of the training documents (keeping the
// original labels), augments the training set with the successful ones,
// and retrains from scratch with train_cfg.
RetrainOutcome retrain_with_adversarial(const Model& model,
                                        const Corpus& train_corpus,
                                        const Lexicons& lex,
                                        const KeywordSets& ks,
                                        const AttackConfig& attack_cfg,
                                        const ModelConfig& train_cfg);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& json_text);
std::string report_to_markdown(const EvalReport& before,
                               const EvalReport& after);
std::string histogram_to_csv(const EvalReport& report);

}  // namespace advtext
