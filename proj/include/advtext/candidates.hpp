#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "advtext/lexicons.hpp"
#include "advtext/textcore.hpp"

namespace advtext {

enum class Source { Synonym, Typo, Genre };

const char* to_string(Source s);
Source source_from_string(std::string_view s);

struct KeywordSets {
  std::array<std::string, 2> labels;
  std::set<std::string> genres;
  std::map<std::string, std::set<std::string>> global_distinctive;
  std::map<std::pair<std::string, std::string>, std::set<std::string>>
      genre_distinctive;  // (class, genre) -> words
  int min_count = 5;
  double ratio_threshold = 3.0;

  const std::string& opposite(const std::string& label) const;
};

// Distinctive keywords per class and per (class, genre) by smoothed term
// frequency ratio; stopwords and punctuation excluded.
KeywordSets build_keyword_sets(const Corpus& corpus,
                               const std::unordered_set<std::string>& stopwords,
                               int min_count, double ratio_threshold);

// delta_j intersect delta_{i,k} with i = current class, j the opposite
// class, k = genre. Empty genre -> empty set.
std::set<std::string> genre_candidates(const KeywordSets& ks,
                                       const std::string& current_class,
                                       const std::string& genre);

struct Candidate {
  std::string word;  // normalized
  Pos pos = Pos::Other;
  Source source = Source::Synonym;
  double score = 0;  // filled during candidate selection
};

struct CandidatePool {
  int position = 0;
  std::string target;  // normalized target word
  std::vector<Candidate> candidates;  // deduplicated; target never present
};

// Synonyms + valid typos + genre keywords for the token at `position`.
// current_class is the document's predicted class. Duplicate words keep
// source priority synonym > genre > typo.
CandidatePool build_pool(const Document& doc, int position,
                         const std::string& current_class, const Lexicons& lex,
                         const KeywordSets& ks, bool use_genre = true);

}  // namespace advtext
