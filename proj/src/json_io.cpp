#include "advtext/json_io.hpp"

#include <fstream>

#include <json.hpp>

#include "advtext/errors.hpp"

namespace advtext {

using nlohmann::json;

namespace {

json edit_to_json(const Edit& e) {
  json j = {{"kind", to_string(e.kind)}, {"position", e.position}};
  if (e.old_word) j["old_word"] = *e.old_word;
  if (e.new_word) j["new_word"] = *e.new_word;
  if (e.source) j["source"] = to_string(*e.source);
  return j;
}

Edit edit_from_json(const json& j) {
  Edit e;
  e.kind = edit_kind_from_string(j.at("kind").get<std::string>());
  e.position = j.at("position").get<int>();
  if (j.contains("old_word")) e.old_word = j["old_word"].get<std::string>();
  if (j.contains("new_word")) e.new_word = j["new_word"].get<std::string>();
  if (j.contains("source")) {
    e.source = source_from_string(j["source"].get<std::string>());
  }
  return e;
}

Document document_from_text(const std::string& id, const std::string& text,
                            const std::string& label,
                            const std::string& subcategory,
                            const PosLexicon& lexicon) {
  Document d;
  d.id = id;
  d.raw = text;
  d.label = label;
  d.subcategory = subcategory;
  d.tokens = tokenize(text);
  tag_pos(d.tokens, lexicon);
  return d;
}

}  // namespace

std::string attack_result_to_json(const AttackResult& r) {
  json edits = json::array();
  for (const auto& e : r.edits) edits.push_back(edit_to_json(e));
  json trace = json::array();
  for (const auto& p : r.probability_trace) trace.push_back({p[0], p[1]});
  json j = {
      {"id", r.original.id},
      {"label", r.original.label},
      {"subcategory", r.original.subcategory},
      {"original_text", r.original.raw},
      {"adversarial_text", detokenize(r.adversarial.tokens)},
      {"success", r.success},
      {"initial_label", r.initial_label},
      {"final_label", r.final_label},
      {"edits", edits},
      {"probability_trace", trace},
      {"similarity", r.similarity},
  };
  return j.dump();
}

AttackResult attack_result_from_json(const std::string& line,
                                     const PosLexicon& lexicon) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedRecord, std::string("bad result JSON: ") + e.what());
  }
  AttackResult r;
  const auto id = j.at("id").get<std::string>();
  const auto label = j.at("label").get<std::string>();
  const auto subcategory = j.value("subcategory", std::string());
  r.original = document_from_text(id, j.at("original_text").get<std::string>(),
                                  label, subcategory, lexicon);
  r.adversarial =
      document_from_text(id, j.at("adversarial_text").get<std::string>(), label,
                         subcategory, lexicon);
  r.success = j.at("success").get<bool>();
  r.initial_label = j.at("initial_label").get<std::string>();
  r.final_label = j.at("final_label").get<std::string>();
  for (const auto& e : j.at("edits")) r.edits.push_back(edit_from_json(e));
  for (const auto& p : j.at("probability_trace")) {
    r.probability_trace.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  r.similarity = j.at("similarity").get<double>();
  return r;
}

void results_to_jsonl(const std::vector<AttackResult>& results,
                      std::ostream& out) {
  for (const auto& r : results) out << attack_result_to_json(r) << "\n";
}

std::vector<AttackResult> results_from_jsonl(const std::string& path,
                                             const PosLexicon& lexicon) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open file: " + path);
  std::vector<AttackResult> results;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    results.push_back(attack_result_from_json(line, lexicon));
  }
  return results;
}

std::string keyword_sets_to_json(const KeywordSets& ks) {
  json global = json::object();
  for (const auto& [label, words] : ks.global_distinctive) {
    global[label] = words;
  }
  json by_genre = json::object();
  for (const auto& [key, words] : ks.genre_distinctive) {
    by_genre[key.first + "/" + key.second] = words;
  }
  json j = {
      {"labels", {ks.labels[0], ks.labels[1]}},
      {"parameters",
       {{"min_count", ks.min_count}, {"ratio_threshold", ks.ratio_threshold}}},
      {"global_distinctive", global},
      {"genre_distinctive", by_genre},
  };
  return j.dump(2);
}

std::string ranking_to_json(const ContributionRanking& ranking) {
  json entries = json::array();
  for (const auto& s : ranking.entries) {
    entries.push_back({{"position", s.position},
                       {"word", s.word},
                       {"score", s.score},
                       {"method", to_string(s.method)}});
  }
  json j = {{"id", ranking.document_id},
            {"label", ranking.label},
            {"entries", entries}};
  return j.dump();
}

}  // namespace advtext
