#pragma once

#include <Eigen/Core>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "advtext/textcore.hpp"

namespace advtext {

struct EmbeddingTable {
  Eigen::Index dimension = 0;
  std::unordered_map<std::string, Eigen::VectorXd> vectors;
  Eigen::VectorXd oov;  // all zeros

  // Total: unknown words map to the zero vector.
  const Eigen::VectorXd& lookup(const std::string& normalized) const {
    auto it = vectors.find(normalized);
    return it == vectors.end() ? oov : it->second;
  }
};

struct Dictionary {
  std::set<std::string> words;

  bool contains(const std::string& w) const { return words.count(w) != 0; }
};

struct Thesaurus {
  std::unordered_map<std::string, std::vector<std::string>> synonyms;
};

// GloVe-style text format: `word v1 v2 ... vd` per line.
EmbeddingTable load_embeddings(const std::string& path);

// One lowercase word per line.
Dictionary load_dictionary(const std::string& path);

// Lines `word<TAB>syn1,syn2,...`; self-synonyms are dropped on load.
Thesaurus load_thesaurus(const std::string& path);

std::unordered_set<std::string> load_stopwords(const std::string& path);

// Never contains the word itself.
std::vector<std::string> synonyms(const std::string& word, const Thesaurus& t);

// All dictionary members at Damerau-Levenshtein distance exactly 1
// (substitution, deletion, insertion, adjacent transposition over a-z),
// excluding the word itself, ordered lexicographically.
std::vector<std::string> valid_typos(const std::string& word, const Dictionary& d);

// The static resources bundled for one run.
struct Lexicons {
  EmbeddingTable embeddings;
  Dictionary dictionary;
  Thesaurus thesaurus;
  PosLexicon pos_lexicon;
  std::unordered_set<std::string> stopwords;
};

}  // namespace advtext
