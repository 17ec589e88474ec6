#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "advtext/scoring.hpp"
#include "helpers.hpp"

using namespace advtext;

namespace {

const PosLexicon kTags{
    {"good", Pos::Adj},   {"great", Pos::Adj}, {"bad", Pos::Adj},
    {"awful", Pos::Adj},  {"dull", Pos::Adj},  {"movie", Pos::Noun},
    {"was", Pos::Verb},   {"the", Pos::Other}, {"truly", Pos::Adv},
    {"nice", Pos::Adj},
};

EmbeddingTable table() {
  return testutil::make_embeddings({{"good", 0.8},
                                    {"great", 1.0},
                                    {"bad", -0.8},
                                    {"awful", -1.0},
                                    {"dull", -0.4},
                                    {"movie", 0.0},
                                    {"was", 0.0},
                                    {"the", 0.0},
                                    {"truly", 0.6},
                                    {"nice", 0.3}},
                                   5, 0.15);
}

// Direct two-branch reference: delete token k, re-run the model, and
// combine the posteriors; written against predict_proba only.
double loo_reference(const Model& model, const EmbeddingTable& tab,
                     const Document& doc, int k) {
  auto base = predict_proba(model, tab, doc);
  const int yi = base.argmax();
  Document reduced = doc;
  reduced.tokens.erase(reduced.tokens.begin() + k);
  for (std::size_t i = 0; i < reduced.tokens.size(); ++i) {
    reduced.tokens[i].position = static_cast<int>(i);
  }
  auto after = predict_proba(model, tab, reduced);
  const int yj = after.argmax();
  if (yj == yi) {
    return base.probs[static_cast<std::size_t>(yi)] -
           after.probs[static_cast<std::size_t>(yi)];
  }
  return base.probs[static_cast<std::size_t>(yi)] +
         after.probs[static_cast<std::size_t>(yj)];
}

}  // namespace

TEST_CASE("score_loo equals the deletion reference on every position") {
  auto tab = table();
  auto model = testutil::make_linear_model(5);
  const std::vector<std::string> texts = {
      "the movie was good",
      "the movie was truly great",
      "bad bad bad nice",
      "dull movie",
      "good",
  };
  for (const auto& text : texts) {
    auto doc = testutil::make_doc(text, kTags);
    for (int k = 0; k < static_cast<int>(doc.tokens.size()); ++k) {
      CHECK(score_loo(model, tab, doc, k) ==
            doctest::Approx(loo_reference(model, tab, doc, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("score_loo takes the flip branch when deletion changes the argmax") {
  auto tab = table();
  auto model = testutil::make_linear_model(5);
  // one strong positive word holding two weak negatives at bay: deleting
  // it flips the prediction
  auto doc = testutil::make_doc("great dull dull", kTags);
  auto base = predict_proba(model, tab, doc);
  REQUIRE(base.argmax() == 1);
  Document reduced = doc;
  reduced.tokens.erase(reduced.tokens.begin());
  REQUIRE(predict_proba(model, tab, reduced).argmax() == 0);

  double s = score_loo(model, tab, doc, 0);
  CHECK(s == doctest::Approx(loo_reference(model, tab, doc, 0)));
  // flip-branch scores exceed any probability difference
  CHECK(s > 1.0);
}

TEST_CASE("score_grad approximates the deletion effect to first order") {
  auto tab = table();
  auto model = testutil::make_linear_model(5, 1.5);
  auto doc = testutil::make_doc("the movie was good bad nice", kTags);
  // signs should agree with LOO for clearly loaded words
  for (int k : {3, 4}) {
    double g = score_grad(model, tab, doc, k);
    double l = score_loo(model, tab, doc, k);
    CHECK(g * l > 0);
  }
  // L2 scalarization is non-negative by construction
  for (int k = 0; k < 6; ++k) {
    CHECK(score_grad(model, tab, doc, k, GradScalar::L2) >= 0);
  }
}

TEST_CASE("rank_words sorts by score and skips OTHER tokens") {
  auto tab = table();
  auto model = testutil::make_linear_model(5);
  auto doc = testutil::make_doc("the great movie was good . nice", kTags);
  auto ranking = rank_words(model, tab, doc, ScoreMethod::Loo);
  CHECK(ranking.document_id == doc.id);
  CHECK(ranking.label == "pos");
  // "the" and "." are OTHER and never scored
  for (const auto& e : ranking.entries) {
    CHECK(e.word != "the");
    CHECK(e.word != ".");
  }
  REQUIRE(ranking.entries.size() == 5);
  for (std::size_t i = 1; i < ranking.entries.size(); ++i) {
    CHECK(ranking.entries[i - 1].score >= ranking.entries[i].score);
  }
  // the strongest positive word leads for a positive prediction
  CHECK(ranking.entries.front().word == "great");
}

TEST_CASE("rank_words breaks score ties by position") {
  auto tab = table();
  auto model = testutil::make_linear_model(5);
  auto doc = testutil::make_doc("good movie good", kTags);
  auto ranking = rank_words(model, tab, doc, ScoreMethod::Loo);
  REQUIRE(ranking.entries.size() == 3);
  CHECK(ranking.entries[0].word == "good");
  CHECK(ranking.entries[1].word == "good");
  CHECK(ranking.entries[0].position < ranking.entries[1].position);
}

TEST_CASE("loo and grad rankings agree on direction for a smooth model") {
  auto tab = table();
  auto model = testutil::make_linear_model(5, 1.0);
  auto doc = testutil::make_doc("great good nice dull bad awful", kTags);
  auto loo = rank_words(model, tab, doc, ScoreMethod::Loo);
  auto grad = rank_words(model, tab, doc, ScoreMethod::Grad);
  REQUIRE(loo.entries.size() == grad.entries.size());
  // Spearman rank correlation between the two orderings
  auto ranks = [](const ContributionRanking& r) {
    std::vector<int> by_pos(r.entries.size());
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
      by_pos[static_cast<std::size_t>(r.entries[i].position)] =
          static_cast<int>(i);
    }
    return by_pos;
  };
  auto ra = ranks(loo);
  auto rb = ranks(grad);
  double n = static_cast<double>(ra.size());
  double d2 = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    double d = ra[i] - rb[i];
    d2 += d * d;
  }
  double spearman = 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
  CHECK(spearman > 0.5);
}
