#include "advtext/scoring.hpp"

#include <algorithm>

#include "advtext/errors.hpp"

namespace advtext {

const char* to_string(ScoreMethod m) {
  return m == ScoreMethod::Grad ? "grad" : "loo";
}

ScoreMethod score_method_from_string(std::string_view s) {
  if (s == "loo") return ScoreMethod::Loo;
  if (s == "grad") return ScoreMethod::Grad;
  throw Error(Errc::ConfigError, "unknown scoring method: " + std::string(s));
}

GradScalar grad_scalar_from_string(std::string_view s) {
  if (s == "dot") return GradScalar::Dot;
  if (s == "l2") return GradScalar::L2;
  throw Error(Errc::ConfigError, "unknown gradient scalarization: " + std::string(s));
}

double score_loo(const Model& model, const EmbeddingTable& table,
                 const Document& doc, int k) {
  if (doc.tokens.empty()) {
    throw Error(Errc::EmptyDocument, "cannot score an empty document");
  }
  if (k < 0 || k >= static_cast<int>(doc.tokens.size())) {
    throw Error(Errc::IndexOutOfRange,
                "token index " + std::to_string(k) + " out of range");
  }
  auto embeds = embed_document(doc, table);
  Prediction base = predict_embedded(model, embeds);
  int yi = base.argmax();
  std::vector<Eigen::VectorXd> without;
  without.reserve(embeds.size() - 1);
  for (std::size_t i = 0; i < embeds.size(); ++i) {
    if (static_cast<int>(i) != k) without.push_back(embeds[i]);
  }
  Prediction removed = predict_embedded(model, without);
  int yj = removed.argmax();
  if (yj == yi) {
    return base.probs[yi] - removed.probs[yi];
  }
  return base.probs[yi] + removed.probs[yj];
}

double score_grad(const Model& model, const EmbeddingTable& table,
                  const Document& doc, int k, GradScalar scalar) {
  if (doc.tokens.empty()) {
    throw Error(Errc::EmptyDocument, "cannot score an empty document");
  }
  if (k < 0 || k >= static_cast<int>(doc.tokens.size())) {
    throw Error(Errc::IndexOutOfRange,
                "token index " + std::to_string(k) + " out of range");
  }
  auto embeds = embed_document(doc, table);
  int yi = predict_embedded(model, embeds).argmax();
  auto grads = input_gradient_embedded(model, embeds, yi);
  const auto& g = grads[static_cast<std::size_t>(k)];
  if (scalar == GradScalar::L2) return g.norm();
  // first-order loss increase if the token's embedding were zeroed
  return -g.dot(embeds[static_cast<std::size_t>(k)]);
}

ContributionRanking rank_words(const Model& model, const EmbeddingTable& table,
                               const Document& doc, ScoreMethod method,
                               GradScalar scalar) {
  if (doc.tokens.empty()) {
    throw Error(Errc::EmptyDocument, "cannot rank an empty document");
  }
  ContributionRanking ranking;
  ranking.document_id = doc.id;
  Prediction base = predict_proba(model, table, doc);
  ranking.label = model.label_order[static_cast<std::size_t>(base.argmax())];
  for (const auto& t : doc.tokens) {
    if (t.pos == Pos::Other) continue;
    ContributionScore s;
    s.position = t.position;
    s.word = t.normalized;
    s.method = method;
    s.score = method == ScoreMethod::Loo
                  ? score_loo(model, table, doc, t.position)
                  : score_grad(model, table, doc, t.position, scalar);
    ranking.entries.push_back(std::move(s));
  }
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                   [](const ContributionScore& a, const ContributionScore& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.position < b.position;
                   });
  return ranking;
}

}  // namespace advtext
