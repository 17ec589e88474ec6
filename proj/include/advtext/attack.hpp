#pragma once

#include <optional>
#include <string>
#include <vector>

#include "advtext/candidates.hpp"
#include "advtext/classifier.hpp"
#include "advtext/scoring.hpp"

namespace advtext {

enum class EditKind { Remove, Insert, Replace };

const char* to_string(EditKind k);
EditKind edit_kind_from_string(std::string_view s);

// Positions are pre-edit coordinates of the then-current document; replay
// applies edits sequentially.
struct Edit {
  EditKind kind = EditKind::Replace;
  int position = 0;
  std::optional<std::string> old_word;
  std::optional<std::string> new_word;
  std::optional<Source> source;
};

struct AttackConfig {
  ScoreMethod method = ScoreMethod::Loo;
  GradScalar grad_scalar = GradScalar::Dot;
  int max_changes = 20;
  double adverb_threshold = 0.5;  // relative to the top ranking score
  bool rerank_each_step = false;
  bool use_genre_keywords = true;
  bool require_pos_match_all = false;
};

struct AttackResult {
  Document original;
  Document adversarial;
  std::vector<Edit> edits;
  bool success = false;
  std::string initial_label;
  std::string final_label;
  std::vector<std::array<double, 2>> probability_trace;  // |edits| + 1
  double similarity = 0;
};

// Greedy crafting loop: rank words, then per ranked word either remove a
// high-scoring adverb, insert an adverb before an adjective, or replace
// with the pool candidate minimizing p(y_i | s').
AttackResult craft(const Model& model, const Lexicons& lex,
                   const KeywordSets& ks, const Document& doc,
                   const AttackConfig& cfg);

// argmin over tentatively-applied candidates of the post-edit posterior
// for yi_index (or the first-order gradient shortcut under method=grad).
// Candidates whose Replace would violate the POS constraint are skipped.
std::optional<Candidate> choose_candidate(const Model& model,
                                          const Lexicons& lex,
                                          const Document& doc, int position,
                                          const CandidatePool& pool,
                                          const AttackConfig& cfg,
                                          int yi_index);

// Returns a new document; the input is never mutated. New tokens are
// lowercase with capitalization repair at sentence start, and POS-tagged.
Document apply_edit(const Document& doc, const Edit& edit,
                    const PosLexicon& lexicon);

}  // namespace advtext
