#include "advtext/attack.hpp"

#include <algorithm>
#include <cctype>

#include "advtext/errors.hpp"
#include "advtext/evaluation.hpp"

namespace advtext {

const char* to_string(EditKind k) {
  switch (k) {
    case EditKind::Remove: return "remove";
    case EditKind::Insert: return "insert";
    default: return "replace";
  }
}

EditKind edit_kind_from_string(std::string_view s) {
  if (s == "remove") return EditKind::Remove;
  if (s == "insert") return EditKind::Insert;
  if (s == "replace") return EditKind::Replace;
  throw Error(Errc::MalformedRecord, "unknown edit kind: " + std::string(s));
}

namespace {

bool sentence_start(const Document& doc, int position) {
  if (position == 0) return true;
  const std::string& prev = doc.tokens[static_cast<std::size_t>(position - 1)].surface;
  return prev == "." || prev == "!" || prev == "?";
}

Token make_token(const std::string& word, int position, bool capitalize,
                 const PosLexicon& lexicon) {
  Token t;
  t.normalized = normalize(word);
  t.surface = t.normalized;
  if (capitalize && !t.surface.empty()) {
    t.surface[0] = static_cast<char>(std::toupper(
        static_cast<unsigned char>(t.surface[0])));
  }
  t.pos = tag_word(t.normalized, lexicon);
  t.position = position;
  return t;
}

void renumber(std::vector<Token>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    tokens[i].position = static_cast<int>(i);
  }
}

}  // namespace

Document apply_edit(const Document& doc, const Edit& edit,
                    const PosLexicon& lexicon) {
  const int n = static_cast<int>(doc.tokens.size());
  const int max_pos = edit.kind == EditKind::Insert ? n : n - 1;
  if (edit.position < 0 || edit.position > max_pos) {
    throw Error(Errc::IndexOutOfRange,
                "edit position " + std::to_string(edit.position) +
                    " out of range for " + std::to_string(n) + " tokens");
  }
  Document out = doc;
  auto& tokens = out.tokens;
  const auto at = tokens.begin() + edit.position;
  switch (edit.kind) {
    case EditKind::Remove:
      tokens.erase(at);
      break;
    case EditKind::Insert:
      tokens.insert(at, make_token(*edit.new_word, edit.position,
                                   sentence_start(doc, edit.position), lexicon));
      break;
    case EditKind::Replace:
      *at = make_token(*edit.new_word, edit.position,
                       sentence_start(doc, edit.position), lexicon);
      break;
  }
  renumber(tokens);
  out.raw = detokenize(tokens);
  return out;
}

std::optional<Candidate> choose_candidate(const Model& model,
                                          const Lexicons& lex,
                                          const Document& doc, int position,
                                          const CandidatePool& pool,
                                          const AttackConfig& cfg,
                                          int yi_index) {
  const Token& target = doc.tokens[static_cast<std::size_t>(position)];
  std::optional<Candidate> best;
  auto source_rank = [](Source s) {
    // tie break: genre > synonym > typo
    return s == Source::Genre ? 0 : s == Source::Synonym ? 1 : 2;
  };
  // gradient shortcut state, computed lazily under method=grad
  std::vector<Eigen::VectorXd> grads;
  for (const auto& cand : pool.candidates) {
    const bool insert = target.pos == Pos::Adj && cand.pos == Pos::Adv;
    if (!insert) {
      const bool need_match =
          cand.source == Source::Genre || cfg.require_pos_match_all;
      if (need_match && cand.pos != target.pos) continue;
    }
    double score;
    if (cfg.method == ScoreMethod::Grad) {
      if (grads.empty()) {
        auto embeds = embed_document(doc, lex.embeddings);
        grads = input_gradient_embedded(model, embeds, yi_index);
      }
      const auto& g = grads[static_cast<std::size_t>(position)];
      const auto& e_cand = lex.embeddings.lookup(cand.word);
      // first-order estimate of the candidate's contribution toward yi
      score = insert ? -g.dot(e_cand)
                     : -g.dot(e_cand - lex.embeddings.lookup(target.normalized));
    } else {
      Edit e;
      e.kind = insert ? EditKind::Insert : EditKind::Replace;
      e.position = position;
      if (!insert) e.old_word = target.normalized;
      e.new_word = cand.word;
      e.source = cand.source;
      Document tentative = apply_edit(doc, e, lex.pos_lexicon);
      score = predict_proba(model, lex.embeddings, tentative)
                  .probs[static_cast<std::size_t>(yi_index)];
    }
    bool better = false;
    if (!best) {
      better = true;
    } else if (score != best->score) {
      better = score < best->score;
    } else if (source_rank(cand.source) != source_rank(best->source)) {
      better = source_rank(cand.source) < source_rank(best->source);
    } else {
      better = cand.word < best->word;
    }
    if (better) {
      best = cand;
      best->score = score;
    }
  }
  return best;
}

AttackResult craft(const Model& model, const Lexicons& lex,
                   const KeywordSets& ks, const Document& doc,
                   const AttackConfig& cfg) {
  if (doc.tokens.empty()) {
    throw Error(Errc::EmptyDocument, "cannot attack an empty document");
  }
  AttackResult result;
  result.original = doc;

  Prediction base = predict_proba(model, lex.embeddings, doc);
  const int yi = base.argmax();
  result.initial_label = model.label_order[static_cast<std::size_t>(yi)];
  result.probability_trace.push_back(base.probs);

  Document cur = doc;
  // eligibility per current position; OTHER tokens and inserted words are
  // never attacked, each word position is attacked at most once
  std::vector<char> eligible(cur.tokens.size());
  for (std::size_t i = 0; i < cur.tokens.size(); ++i) {
    eligible[i] = cur.tokens[i].pos != Pos::Other;
  }

  ContributionRanking ranking =
      rank_words(model, lex.embeddings, cur, cfg.method, cfg.grad_scalar);
  double max_score = ranking.entries.empty() ? 0 : ranking.entries.front().score;
  // current position of each original ranked position (-1 once removed)
  std::vector<int> cur_pos(doc.tokens.size());
  for (std::size_t i = 0; i < cur_pos.size(); ++i) {
    cur_pos[i] = static_cast<int>(i);
  }
  std::size_t next_entry = 0;
  bool flipped = false;

  while (!flipped && static_cast<int>(result.edits.size()) < cfg.max_changes) {
    int p = -1;
    double score = 0;
    if (cfg.rerank_each_step) {
      if (cur.tokens.empty()) break;
      ranking = rank_words(model, lex.embeddings, cur, cfg.method, cfg.grad_scalar);
      if (ranking.entries.empty()) break;
      max_score = ranking.entries.front().score;
      for (const auto& entry : ranking.entries) {
        if (eligible[static_cast<std::size_t>(entry.position)]) {
          p = entry.position;
          score = entry.score;
          break;
        }
      }
      if (p < 0) break;
    } else {
      while (next_entry < ranking.entries.size()) {
        const auto& entry = ranking.entries[next_entry];
        int mapped = cur_pos[static_cast<std::size_t>(entry.position)];
        if (mapped >= 0 && eligible[static_cast<std::size_t>(mapped)]) {
          p = mapped;
          score = entry.score;
          break;
        }
        ++next_entry;
      }
      if (p < 0) break;
      ++next_entry;
    }

    const Token tok = cur.tokens[static_cast<std::size_t>(p)];
    std::optional<Edit> edit;
    if (tok.pos == Pos::Adv && score >= cfg.adverb_threshold * max_score) {
      Edit e;
      e.kind = EditKind::Remove;
      e.position = p;
      e.old_word = tok.normalized;
      edit = e;
    } else {
      CandidatePool pool = build_pool(cur, p, result.initial_label, lex, ks,
                                      cfg.use_genre_keywords);
      auto chosen = choose_candidate(model, lex, cur, p, pool, cfg, yi);
      if (!chosen) {
        eligible[static_cast<std::size_t>(p)] = 0;
        continue;
      }
      Edit e;
      if (tok.pos == Pos::Adj && chosen->pos == Pos::Adv) {
        e.kind = EditKind::Insert;
        e.position = p;
      } else {
        e.kind = EditKind::Replace;
        e.position = p;
        e.old_word = tok.normalized;
      }
      e.new_word = chosen->word;
      e.source = chosen->source;
      edit = e;
    }

    cur = apply_edit(cur, *edit, lex.pos_lexicon);
    if (edit->kind == EditKind::Remove) {
      eligible.erase(eligible.begin() + edit->position);
      for (auto& cp : cur_pos) {
        if (cp == edit->position) cp = -1;
        else if (cp > edit->position) --cp;
      }
    } else if (edit->kind == EditKind::Insert) {
      eligible.insert(eligible.begin() + edit->position, 0);
      // the word the insertion targeted still counts as attacked
      eligible[static_cast<std::size_t>(edit->position) + 1] = 0;
      for (auto& cp : cur_pos) {
        if (cp >= edit->position) ++cp;
      }
    } else {
      eligible[static_cast<std::size_t>(edit->position)] = 0;
    }
    result.edits.push_back(*edit);

    Prediction pr = predict_proba(model, lex.embeddings, cur);
    result.probability_trace.push_back(pr.probs);
    flipped = pr.argmax() != yi;
  }

  result.adversarial = cur;
  result.success = flipped;
  const auto& last = result.probability_trace.back();
  result.final_label =
      model.label_order[last[1] > last[0] ? 1 : 0];
  result.similarity = semantic_similarity(doc, cur, lex.embeddings);
  return result;
}

}  // namespace advtext
