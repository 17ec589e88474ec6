#include "advtext/candidates.hpp"

#include <cctype>
#include <map>

#include "advtext/errors.hpp"

namespace advtext {

const char* to_string(Source s) {
  switch (s) {
    case Source::Synonym: return "synonym";
    case Source::Typo: return "typo";
    default: return "genre";
  }
}

Source source_from_string(std::string_view s) {
  if (s == "synonym") return Source::Synonym;
  if (s == "typo") return Source::Typo;
  if (s == "genre") return Source::Genre;
  throw Error(Errc::MalformedRecord, "unknown candidate source: " + std::string(s));
}

const std::string& KeywordSets::opposite(const std::string& label) const {
  if (label == labels[0]) return labels[1];
  if (label == labels[1]) return labels[0];
  throw Error(Errc::UnknownLabel, "label not in keyword sets: " + label);
}

namespace {

bool is_punct_word(const std::string& s) {
  for (unsigned char c : s) {
    if (std::isalnum(c) || c >= 0x80) return false;
  }
  return true;
}

using Counts = std::map<std::string, long>;

// count >= min_count and tf_c >= ratio * smoothed tf_other
std::set<std::string> distinctive(const Counts& counts_c, long total_c,
                                  const Counts& counts_other, long total_other,
                                  int min_count, double ratio,
                                  const std::unordered_set<std::string>& stopwords) {
  std::set<std::string> out;
  if (total_c == 0 || total_other == 0) return out;
  for (const auto& [word, cnt] : counts_c) {
    if (cnt < min_count) continue;
    if (stopwords.count(word) || is_punct_word(word)) continue;
    double tf = static_cast<double>(cnt) / static_cast<double>(total_c);
    long other_cnt = 0;
    if (auto it = counts_other.find(word); it != counts_other.end()) {
      other_cnt = it->second;
    }
    double tf_other = static_cast<double>(other_cnt + 1) /
                      static_cast<double>(total_other);
    if (tf >= ratio * tf_other) out.insert(word);
  }
  return out;
}

}  // namespace

KeywordSets build_keyword_sets(const Corpus& corpus,
                               const std::unordered_set<std::string>& stopwords,
                               int min_count, double ratio_threshold) {
  if (corpus.labels.size() != 2) {
    throw Error(Errc::NotBinary, "keyword sets need exactly 2 labels, got " +
                                     std::to_string(corpus.labels.size()));
  }
  KeywordSets ks;
  ks.labels = {corpus.labels[0], corpus.labels[1]};
  ks.genres.insert(corpus.subcategories.begin(), corpus.subcategories.end());
  ks.min_count = min_count;
  ks.ratio_threshold = ratio_threshold;

  std::map<std::string, Counts> class_counts;
  std::map<std::string, long> class_totals;
  std::map<std::pair<std::string, std::string>, Counts> cell_counts;
  std::map<std::pair<std::string, std::string>, long> cell_totals;
  for (const auto& doc : corpus.documents) {
    for (const auto& t : doc.tokens) {
      ++class_counts[doc.label][t.normalized];
      ++class_totals[doc.label];
      if (!doc.subcategory.empty()) {
        auto key = std::make_pair(doc.label, doc.subcategory);
        ++cell_counts[key][t.normalized];
        ++cell_totals[key];
      }
    }
  }
  for (int i = 0; i < 2; ++i) {
    const auto& c = ks.labels[static_cast<std::size_t>(i)];
    const auto& other = ks.labels[static_cast<std::size_t>(1 - i)];
    ks.global_distinctive[c] =
        distinctive(class_counts[c], class_totals[c], class_counts[other],
                    class_totals[other], min_count, ratio_threshold, stopwords);
    for (const auto& genre : ks.genres) {
      auto key = std::make_pair(c, genre);
      auto other_key = std::make_pair(other, genre);
      ks.genre_distinctive[key] =
          distinctive(cell_counts[key], cell_totals[key], cell_counts[other_key],
                      cell_totals[other_key], min_count, ratio_threshold,
                      stopwords);
    }
  }
  return ks;
}

std::set<std::string> genre_candidates(const KeywordSets& ks,
                                       const std::string& current_class,
                                       const std::string& genre) {
  if (genre.empty()) return {};
  if (!ks.genres.count(genre)) {
    throw Error(Errc::UnknownGenre, "unknown genre: " + genre);
  }
  const std::string& opposite = ks.opposite(current_class);
  auto global_it = ks.global_distinctive.find(opposite);
  auto genre_it = ks.genre_distinctive.find({current_class, genre});
  std::set<std::string> out;
  if (global_it == ks.global_distinctive.end() ||
      genre_it == ks.genre_distinctive.end()) {
    return out;
  }
  for (const auto& w : genre_it->second) {
    if (global_it->second.count(w)) out.insert(w);
  }
  return out;
}

CandidatePool build_pool(const Document& doc, int position,
                         const std::string& current_class, const Lexicons& lex,
                         const KeywordSets& ks, bool use_genre) {
  if (position < 0 || position >= static_cast<int>(doc.tokens.size())) {
    throw Error(Errc::IndexOutOfRange,
                "token index " + std::to_string(position) + " out of range");
  }
  const std::string& target = doc.tokens[static_cast<std::size_t>(position)].normalized;
  CandidatePool pool;
  pool.position = position;
  pool.target = target;

  std::map<std::string, std::size_t> index;  // word -> slot in pool
  auto add = [&](const std::string& word, Source source) {
    if (word.empty() || word == target) return;
    auto it = index.find(word);
    if (it != index.end()) {
      // priority synonym > genre > typo
      auto rank = [](Source s) {
        return s == Source::Synonym ? 0 : s == Source::Genre ? 1 : 2;
      };
      auto& existing = pool.candidates[it->second];
      if (rank(source) < rank(existing.source)) existing.source = source;
      return;
    }
    Candidate c;
    c.word = word;
    c.pos = tag_word(word, lex.pos_lexicon);
    c.source = source;
    index[word] = pool.candidates.size();
    pool.candidates.push_back(std::move(c));
  };

  for (const auto& w : synonyms(target, lex.thesaurus)) add(w, Source::Synonym);
  if (use_genre && !doc.subcategory.empty()) {
    for (const auto& w : genre_candidates(ks, current_class, doc.subcategory)) {
      add(w, Source::Genre);
    }
  }
  for (const auto& w : valid_typos(target, lex.dictionary)) add(w, Source::Typo);
  return pool;
}

}  // namespace advtext
