#include "advtext/lexicons.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "advtext/errors.hpp"

namespace advtext {

namespace {

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open file: " + path);
  return in;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

EmbeddingTable load_embeddings(const std::string& path) {
  auto in = open_or_throw(path);
  EmbeddingTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    std::vector<double> values;
    double v;
    while (ls >> v) values.push_back(v);
    if (table.dimension == 0) {
      if (values.empty()) {
        throw Error(Errc::DimensionMismatch,
                    path + ":" + std::to_string(lineno) + ": no vector values");
      }
      table.dimension = static_cast<Eigen::Index>(values.size());
      table.oov = Eigen::VectorXd::Zero(table.dimension);
    } else if (static_cast<Eigen::Index>(values.size()) != table.dimension) {
      throw Error(Errc::DimensionMismatch,
                  path + ":" + std::to_string(lineno) + ": expected " +
                      std::to_string(table.dimension) + " values, got " +
                      std::to_string(values.size()));
    }
    Eigen::VectorXd vec(table.dimension);
    for (Eigen::Index i = 0; i < table.dimension; ++i) vec[i] = values[i];
    table.vectors[normalize(word)] = std::move(vec);
  }
  if (table.dimension == 0) {
    throw Error(Errc::EmptyFile, path + ": no embedding lines");
  }
  return table;
}

Dictionary load_dictionary(const std::string& path) {
  auto in = open_or_throw(path);
  Dictionary dict;
  std::string line;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (!line.empty()) dict.words.insert(normalize(line));
  }
  if (dict.words.empty()) {
    throw Error(Errc::EmptyFile, path + ": empty dictionary");
  }
  return dict;
}

Thesaurus load_thesaurus(const std::string& path) {
  auto in = open_or_throw(path);
  Thesaurus t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(Errc::MalformedRecord,
                  path + ":" + std::to_string(lineno) +
                      ": expected word<TAB>syn1,syn2,...");
    }
    std::string word = normalize(line.substr(0, tab));
    std::vector<std::string> syns;
    std::istringstream rest(line.substr(tab + 1));
    std::string syn;
    while (std::getline(rest, syn, ',')) {
      syn = normalize(syn);
      if (!syn.empty() && syn != word) syns.push_back(syn);
    }
    t.synonyms[word] = std::move(syns);
  }
  return t;
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
  auto in = open_or_throw(path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (!line.empty()) words.insert(normalize(line));
  }
  return words;
}

std::vector<std::string> synonyms(const std::string& word, const Thesaurus& t) {
  auto it = t.synonyms.find(word);
  if (it == t.synonyms.end()) return {};
  return it->second;
}

std::vector<std::string> valid_typos(const std::string& word,
                                     const Dictionary& d) {
  std::set<std::string> out;
  const std::size_t n = word.size();
  auto consider = [&](const std::string& cand) {
    if (cand != word && d.contains(cand)) out.insert(cand);
  };
  std::string buf;
  // deletions
  for (std::size_t i = 0; i < n; ++i) {
    buf = word;
    buf.erase(i, 1);
    consider(buf);
  }
  // adjacent transpositions
  for (std::size_t i = 0; i + 1 < n; ++i) {
    buf = word;
    std::swap(buf[i], buf[i + 1]);
    consider(buf);
  }
  // substitutions and insertions over a-z
  for (char c = 'a'; c <= 'z'; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      buf = word;
      buf[i] = c;
      consider(buf);
    }
    for (std::size_t i = 0; i <= n; ++i) {
      buf = word;
      buf.insert(buf.begin() + static_cast<std::ptrdiff_t>(i), c);
      consider(buf);
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace advtext
