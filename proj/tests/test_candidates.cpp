#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "advtext/candidates.hpp"
#include "advtext/errors.hpp"
#include "helpers.hpp"

using namespace advtext;

namespace {

// Corpus where "blast" is overall typical of neg documents but, inside
// the pos/action cell, typical of pos ones, making it the lone
// intersection candidate for pos/action documents.
Corpus keyword_corpus() {
  Corpus corpus;
  corpus.labels = {"neg", "pos"};
  corpus.subcategories = {"action", "drama"};
  int id = 0;
  auto add = [&](const std::string& label, const std::string& genre,
                 const std::string& text, int copies) {
    for (int i = 0; i < copies; ++i) {
      Document d;
      d.id = "k" + std::to_string(id++);
      d.label = label;
      d.subcategory = genre;
      d.raw = text;
      d.tokens = tokenize(text);
      corpus.documents.push_back(std::move(d));
    }
  };
  add("neg", "drama", "the film was weary blast blast blast", 10);
  add("neg", "action", "the film was weary", 10);
  add("pos", "action", "the film was shiny blast", 6);
  add("pos", "drama", "the film was shiny", 14);
  return corpus;
}

}  // namespace

TEST_CASE("build_keyword_sets finds class- and cell-distinctive words") {
  auto ks = build_keyword_sets(keyword_corpus(), {"the", "was"}, 5, 3.0);
  CHECK(ks.labels == std::array<std::string, 2>{"neg", "pos"});
  CHECK(ks.genres == std::set<std::string>{"action", "drama"});

  // "weary" and "blast" dominate neg text; "shiny" dominates pos
  CHECK(ks.global_distinctive.at("neg").count("weary"));
  CHECK(ks.global_distinctive.at("neg").count("blast"));
  CHECK(ks.global_distinctive.at("pos").count("shiny"));
  CHECK_FALSE(ks.global_distinctive.at("pos").count("blast"));
  // frequent but balanced words and stopwords never qualify
  CHECK_FALSE(ks.global_distinctive.at("neg").count("film"));
  CHECK_FALSE(ks.global_distinctive.at("neg").count("the"));

  // inside the action cell, "blast" marks pos documents
  CHECK(ks.genre_distinctive.at({"pos", "action"}).count("blast"));
  CHECK_FALSE(ks.genre_distinctive.at({"neg", "action"}).count("blast"));
}

TEST_CASE("genre_candidates intersects opposite-global with current-cell") {
  auto ks = build_keyword_sets(keyword_corpus(), {"the", "was"}, 5, 3.0);
  // attacking pos/action: globally-neg words that look pos inside action
  auto cands = genre_candidates(ks, "pos", "action");
  CHECK(cands == std::set<std::string>{"blast"});
  // attacking neg/action: nothing qualifies both ways
  CHECK(genre_candidates(ks, "neg", "action").empty());
  // the two directions never share a word
  for (const auto& genre : ks.genres) {
    auto a = genre_candidates(ks, "pos", genre);
    auto b = genre_candidates(ks, "neg", genre);
    for (const auto& w : a) CHECK_FALSE(b.count(w));
  }
}

TEST_CASE("genre_candidates handles missing and unknown genres") {
  auto ks = build_keyword_sets(keyword_corpus(), {}, 5, 3.0);
  CHECK(genre_candidates(ks, "pos", "").empty());
  CHECK_THROWS_AS(genre_candidates(ks, "pos", "western"), Error);
  CHECK_THROWS_AS(genre_candidates(ks, "maybe", "action"), Error);
}

TEST_CASE("build_keyword_sets requires exactly two labels") {
  Corpus corpus;
  corpus.labels = {"a", "b", "c"};
  try {
    build_keyword_sets(corpus, {}, 5, 3.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotBinary);
  }
}

TEST_CASE("build_pool merges sources with stable priorities") {
  Lexicons lex;
  lex.dictionary.words = {"good", "god", "goods", "blast"};
  lex.thesaurus.synonyms["good"] = {"nice", "blast"};
  lex.pos_lexicon = {{"good", Pos::Adj}, {"nice", Pos::Adj},
                     {"blast", Pos::Noun}, {"god", Pos::Noun}};
  auto ks = build_keyword_sets(keyword_corpus(), {"the", "was"}, 5, 3.0);

  auto doc = testutil::make_doc("a good film", lex.pos_lexicon, "d1", "pos",
                                "action");
  auto pool = build_pool(doc, 1, "pos", lex, ks);
  CHECK(pool.target == "good");
  REQUIRE(pool.candidates.size() == 4);
  // synonyms first, then genre words, then typos; "blast" is both a
  // synonym and a genre keyword and keeps the synonym source
  CHECK(pool.candidates[0].word == "nice");
  CHECK(pool.candidates[0].source == Source::Synonym);
  CHECK(pool.candidates[1].word == "blast");
  CHECK(pool.candidates[1].source == Source::Synonym);
  CHECK(pool.candidates[2].word == "god");
  CHECK(pool.candidates[2].source == Source::Typo);
  CHECK(pool.candidates[3].word == "goods");
  CHECK(pool.candidates[3].pos == Pos::Other);  // not in the POS lexicon

  // disabling genre keywords drops cell candidates but keeps the rest
  auto no_genre = build_pool(doc, 1, "pos", lex, ks, false);
  CHECK(no_genre.candidates.size() == 4);  // blast still arrives as synonym

  auto neg_doc = testutil::make_doc("a weary film", lex.pos_lexicon, "d2",
                                    "neg", "action");
  auto neg_pool = build_pool(neg_doc, 1, "neg", lex, ks);
  CHECK(neg_pool.candidates.empty());
}

TEST_CASE("build_pool validates the token position") {
  Lexicons lex;
  auto ks = build_keyword_sets(keyword_corpus(), {}, 5, 3.0);
  auto doc = testutil::make_doc("short text", lex.pos_lexicon);
  CHECK_THROWS_AS(build_pool(doc, 5, "pos", lex, ks), Error);
  CHECK_THROWS_AS(build_pool(doc, -1, "pos", lex, ks), Error);
}
