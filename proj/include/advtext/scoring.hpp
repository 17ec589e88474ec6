#pragma once

#include <string>
#include <vector>

#include "advtext/classifier.hpp"

namespace advtext {

enum class ScoreMethod { Loo, Grad };
enum class GradScalar { Dot, L2 };

const char* to_string(ScoreMethod m);
ScoreMethod score_method_from_string(std::string_view s);
GradScalar grad_scalar_from_string(std::string_view s);

struct ContributionScore {
  int position = 0;
  std::string word;  // normalized
  double score = 0;
  ScoreMethod method = ScoreMethod::Loo;
};

struct ContributionRanking {
  std::string document_id;
  std::string label;  // label scored against (current argmax)
  std::vector<ContributionScore> entries;  // descending, ties by position
};

// Two-branch leave-one-out contribution: posterior drop when token k is
// deleted, or p(y_i|s) + p(y_j|s') when the argmax flips.
double score_loo(const Model& model, const EmbeddingTable& table,
                 const Document& doc, int k);

// First-order estimate of the same quantity: dot(-dJ/de_k, e_k) by
// default, ||dJ/de_k|| with GradScalar::L2.
double score_grad(const Model& model, const EmbeddingTable& table,
                  const Document& doc, int k,
                  GradScalar scalar = GradScalar::Dot);

// Scores every non-OTHER token against the current argmax label.
ContributionRanking rank_words(const Model& model, const EmbeddingTable& table,
                               const Document& doc, ScoreMethod method,
                               GradScalar scalar = GradScalar::Dot);

}  // namespace advtext
