#include "advtext/evaluation.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "advtext/errors.hpp"

namespace advtext {

using nlohmann::json;

namespace {

Eigen::VectorXd mean_content_embedding(const Document& doc,
                                       const EmbeddingTable& table) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(table.dimension);
  int count = 0;
  for (const auto& t : doc.tokens) {
    if (t.pos == Pos::Other) continue;
    sum += table.lookup(t.normalized);
    ++count;
  }
  if (count > 0) sum /= static_cast<double>(count);
  return sum;
}

}  // namespace

double semantic_similarity(const Document& a, const Document& b,
                           const EmbeddingTable& table) {
  Eigen::VectorXd va = mean_content_embedding(a, table);
  Eigen::VectorXd vb = mean_content_embedding(b, table);
  double na = va.norm();
  double nb = vb.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return va.dot(vb) / (na * nb);
}

EvalReport evaluate_attack(const Model& model, const EmbeddingTable& table,
                           const Corpus& corpus,
                           const std::vector<AttackResult>& results) {
  if (corpus.documents.size() != results.size()) {
    throw Error(Errc::LengthMismatch,
                "corpus has " + std::to_string(corpus.documents.size()) +
                    " documents but " + std::to_string(results.size()) +
                    " attack results");
  }
  EvalReport report;
  const std::size_t n = results.size();
  if (n == 0) return report;
  std::size_t correct_orig = 0, correct_adv = 0, successes = 0;
  double similarity_sum = 0;
  long edits_sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Document& doc = corpus.documents[i];
    const AttackResult& r = results[i];
    Prediction orig = predict_proba(model, table, doc);
    if (model.label_order[static_cast<std::size_t>(orig.argmax())] == doc.label) {
      ++correct_orig;
    }
    const Document& post = r.success ? r.adversarial : doc;
    Prediction adv = predict_proba(model, table, post);
    if (model.label_order[static_cast<std::size_t>(adv.argmax())] == doc.label) {
      ++correct_adv;
    }
    if (r.success) {
      ++successes;
      similarity_sum += r.similarity;
      edits_sum += static_cast<long>(r.edits.size());
      ++report.changes_histogram[static_cast<int>(r.edits.size())];
    }
  }
  report.accuracy_original = static_cast<double>(correct_orig) / static_cast<double>(n);
  report.accuracy_adversarial = static_cast<double>(correct_adv) / static_cast<double>(n);
  report.perturbed_fraction = static_cast<double>(successes) / static_cast<double>(n);
  if (successes > 0) {
    report.mean_similarity = similarity_sum / static_cast<double>(successes);
    report.mean_changes = static_cast<double>(edits_sum) / static_cast<double>(successes);
  }
  return report;
}

RetrainOutcome retrain_with_adversarial(const Model& model,
                                        const Corpus& train_corpus,
                                        const Lexicons& lex,
                                        const KeywordSets& ks,
                                        const AttackConfig& attack_cfg,
                                        const ModelConfig& train_cfg) {
  Corpus augmented = train_corpus;
  std::size_t added = 0;
  for (const auto& doc : train_corpus.documents) {
    if (doc.tokens.empty()) continue;
    AttackResult r = craft(model, lex, ks, doc, attack_cfg);
    if (!r.success) continue;
    Document adv = r.adversarial;
    adv.id = doc.id + "#adv";
    adv.label = doc.label;  // adversarial samples keep the correct label
    augmented.documents.push_back(std::move(adv));
    ++added;
  }
  RetrainOutcome outcome{train(augmented, lex.embeddings, train_cfg), added};
  return outcome;
}

std::string report_to_json(const EvalReport& report) {
  json hist = json::object();
  for (const auto& [edits, count] : report.changes_histogram) {
    hist[std::to_string(edits)] = count;
  }
  json j = {
      {"accuracy_original", report.accuracy_original},
      {"accuracy_adversarial", report.accuracy_adversarial},
      {"perturbed_fraction", report.perturbed_fraction},
      {"mean_similarity", report.mean_similarity},
      {"mean_changes", report.mean_changes},
      {"changes_histogram", hist},
  };
  if (!report.config_echo.empty()) {
    j["config"] = json::parse(report.config_echo);
  }
  return j.dump(2);
}

EvalReport report_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedRecord, std::string("bad report JSON: ") + e.what());
  }
  EvalReport r;
  r.accuracy_original = j.at("accuracy_original").get<double>();
  r.accuracy_adversarial = j.at("accuracy_adversarial").get<double>();
  r.perturbed_fraction = j.at("perturbed_fraction").get<double>();
  r.mean_similarity = j.at("mean_similarity").get<double>();
  r.mean_changes = j.at("mean_changes").get<double>();
  for (const auto& [k, v] : j.at("changes_histogram").items()) {
    r.changes_histogram[std::stoi(k)] = v.get<int>();
  }
  if (j.contains("config")) r.config_echo = j["config"].dump();
  return r;
}

std::string report_to_markdown(const EvalReport& before,
                               const EvalReport& after) {
  std::ostringstream out;
  auto pct = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * v);
    return std::string(buf);
  };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return std::string(buf);
  };
  out << "| | Value |\n|---|---|\n";
  out << "| **Classifier trained with original training set** | |\n";
  out << "| Accuracy using original test set | " << pct(before.accuracy_original) << " |\n";
  out << "| Accuracy using adversarial test set | " << pct(before.accuracy_adversarial) << " |\n";
  out << "| Percentage of perturbed samples | " << pct(before.perturbed_fraction) << " |\n";
  out << "| Mean semantic similarity (successes) | " << num(before.mean_similarity) << " |\n";
  out << "| Mean changes per success | " << num(before.mean_changes) << " |\n";
  out << "| **Classifier re-trained with perturbed training set** | |\n";
  out << "| Accuracy using original test set | " << pct(after.accuracy_original) << " |\n";
  out << "| Accuracy using adversarial test set | " << pct(after.accuracy_adversarial) << " |\n";
  out << "| Percentage of perturbed samples | " << pct(after.perturbed_fraction) << " |\n";
  return out.str();
}

std::string histogram_to_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "edit_count,sample_count\n";
  for (const auto& [edits, count] : report.changes_histogram) {
    out << edits << "," << count << "\n";
  }
  return out.str();
}

}  // namespace advtext
