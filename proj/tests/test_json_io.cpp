#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "advtext/errors.hpp"
#include "advtext/json_io.hpp"
#include "helpers.hpp"

using namespace advtext;

namespace {

const PosLexicon kTags{
    {"good", Pos::Adj}, {"grim", Pos::Adj}, {"movie", Pos::Noun},
    {"was", Pos::Verb}, {"the", Pos::Other},
};

AttackResult sample_result() {
  AttackResult r;
  r.original = testutil::make_doc("The movie was good.", kTags, "d7", "pos",
                                  "action");
  Edit e;
  e.kind = EditKind::Replace;
  e.position = 3;
  e.old_word = "good";
  e.new_word = "grim";
  e.source = Source::Genre;
  r.adversarial = apply_edit(r.original, e, kTags);
  r.edits = {e};
  r.success = true;
  r.initial_label = "pos";
  r.final_label = "neg";
  r.probability_trace = {{0.1, 0.9}, {0.8, 0.2}};
  r.similarity = 0.77;
  return r;
}

}  // namespace

TEST_CASE("attack results round-trip through JSON lines") {
  auto r = sample_result();
  std::ostringstream out;
  results_to_jsonl({r, r}, out);
  testutil::ScratchDir dir("jsonl");
  auto path = dir.write("a.jsonl", out.str());
  auto back = results_from_jsonl(path, kTags);
  REQUIRE(back.size() == 2);
  const auto& b = back[0];
  CHECK(b.original.id == "d7");
  CHECK(b.original.label == "pos");
  CHECK(b.original.subcategory == "action");
  CHECK(b.original.raw == "The movie was good.");
  CHECK(b.adversarial.raw == "The movie was grim.");
  CHECK(b.adversarial.tokens.size() == 5);
  CHECK(b.adversarial.tokens[3].pos == Pos::Adj);
  CHECK(b.success);
  CHECK(b.initial_label == "pos");
  CHECK(b.final_label == "neg");
  REQUIRE(b.edits.size() == 1);
  CHECK(b.edits[0].kind == EditKind::Replace);
  CHECK(b.edits[0].position == 3);
  CHECK(b.edits[0].old_word == "good");
  CHECK(b.edits[0].new_word == "grim");
  CHECK(b.edits[0].source == Source::Genre);
  REQUIRE(b.probability_trace.size() == 2);
  CHECK(b.probability_trace[1][0] == doctest::Approx(0.8));
  CHECK(b.similarity == doctest::Approx(0.77));
}

TEST_CASE("malformed result lines are rejected") {
  CHECK_THROWS_AS(attack_result_from_json("{broken", kTags), Error);
  CHECK_THROWS_AS(attack_result_from_json("{}", kTags), std::exception);
  testutil::ScratchDir dir("jsonlbad");
  auto path = dir.write("a.jsonl", "not json\n");
  CHECK_THROWS_AS(results_from_jsonl(path, kTags), Error);
  CHECK_THROWS_AS(results_from_jsonl(dir.file("missing.jsonl"), kTags), Error);
}

TEST_CASE("keyword sets serialize with labeled sections") {
  KeywordSets ks;
  ks.labels = {"neg", "pos"};
  ks.genres = {"action"};
  ks.min_count = 4;
  ks.ratio_threshold = 2.5;
  ks.global_distinctive["neg"] = {"weary"};
  ks.global_distinctive["pos"] = {"shiny"};
  ks.genre_distinctive[{"pos", "action"}] = {"blast"};
  auto text = keyword_sets_to_json(ks);
  CHECK(text.find("\"weary\"") != std::string::npos);
  CHECK(text.find("pos/action") != std::string::npos);
  CHECK(text.find("\"min_count\": 4") != std::string::npos);
}

TEST_CASE("rankings serialize entries in order") {
  ContributionRanking ranking;
  ranking.document_id = "d1";
  ranking.label = "pos";
  ranking.entries = {{3, "good", 0.5, ScoreMethod::Loo},
                     {1, "movie", 0.1, ScoreMethod::Loo}};
  auto text = ranking_to_json(ranking);
  CHECK(text.find("\"id\":\"d1\"") != std::string::npos);
  CHECK(text.find("good") < text.find("movie"));
  CHECK(text.find("\"method\":\"loo\"") != std::string::npos);
}
