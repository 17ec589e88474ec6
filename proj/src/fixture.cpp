#include "advtext/fixture.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "advtext/errors.hpp"

namespace advtext::fixture {

namespace {

// Sentiment loading on embedding dimension 0. Dimension 1 carries a
// shared base component so document means stay close under small edits;
// the remaining dimensions are per-word noise.
const std::map<std::string, double>& sentiment_table() {
  static const std::map<std::string, double> table = {
      // nouns / verbs / function words are neutral
      {"movie", 0}, {"film", 0}, {"plot", 0}, {"story", 0}, {"acting", 0},
      {"scene", 0}, {"scenes", 0}, {"actor", 0}, {"actors", 0},
      {"director", 0}, {"script", 0}, {"ending", 0}, {"pacing", 0},
      {"dialogue", 0}, {"cast", 0}, {"crowd", 0}, {"audience", 0},
      {"sequel", 0}, {"soundtrack", 0}, {"picture", 0},
      {"the", 0}, {"a", 0}, {"an", 0}, {"and", 0}, {"it", 0}, {"of", 0},
      {"was", 0}, {"felt", 0}, {"seemed", 0}, {"looked", 0}, {"kept", 0},
      {"made", 0}, {"had", 0}, {"became", 0},
      // strong positive adjectives
      {"good", 0.9}, {"great", 1.0}, {"excellent", 1.1}, {"wonderful", 1.0},
      {"superb", 1.1}, {"charming", 0.9}, {"enjoyable", 0.95},
      {"delightful", 1.0},
      // mild positive adjectives
      {"nice", 0.45}, {"decent", 0.4}, {"fair", 0.05}, {"okay", 0.1},
      {"pleasant", 0.5}, {"fine", 0.3}, {"solid", 0.5},
      // strong negative adjectives
      {"bad", -0.9}, {"awful", -1.1}, {"terrible", -1.1}, {"poor", -0.9},
      {"dull", -0.8}, {"boring", -0.9}, {"dreadful", -1.1}, {"tedious", -0.85},
      {"weak", -0.7}, {"bland", -0.7},
      // mild negative adjectives
      {"mediocre", -0.3}, {"forgettable", -0.25}, {"uneven", -0.25},
      {"flawed", -0.25}, {"flat", -0.05},
      // adverbs
      {"utterly", 0.9}, {"truly", 0.8}, {"wonderfully", 1.0},
      {"remarkably", 0.8}, {"horribly", -1.0}, {"woefully", -0.9},
      // valid-typo vocabulary, neutral
      {"god", 0}, {"goods", 0}, {"find", 0}, {"fined", 0}, {"mice", 0},
      {"pour", 0}, {"door", 0},
      // genre pivots: globally distinctive of one class, locally of the other
      {"hilarious", -0.2}, {"explosive", -0.2}, {"painfully", -0.2},
      {"outrageous", 0.2}, {"frantic", 0.2}, {"touching", 0.2},
  };
  return table;
}

const std::vector<std::string> kNouns = {
    "movie", "film", "plot", "story", "acting", "scene", "actor",
    "director", "script", "ending", "pacing", "dialogue", "cast",
    "soundtrack"};
const std::vector<std::string> kVerbs = {"was", "felt", "seemed", "looked"};
const std::vector<std::string> kStrongPos = {
    "good", "great", "excellent", "wonderful", "superb", "charming",
    "enjoyable", "delightful"};
const std::vector<std::string> kMildPos = {"nice", "decent", "pleasant",
                                           "fine", "solid"};
const std::vector<std::string> kStrongNeg = {
    "bad", "awful", "terrible", "poor", "dull", "boring", "dreadful",
    "tedious", "weak", "bland"};
const std::vector<std::string> kMildNeg = {"mediocre", "forgettable", "uneven",
                                           "flawed"};
const std::vector<std::string> kPosAdv = {"utterly", "truly", "wonderfully",
                                          "remarkably"};
const std::vector<std::string> kNegAdv = {"horribly", "woefully"};

const std::array<std::string, 2> kLabels = {"neg", "pos"};
const std::array<std::string, 3> kGenres = {"action", "comedy", "drama"};

// pivot[class][genre]: appears in own (class, genre) documents and in
// opposite-class documents of the other genres
const std::string& pivot(const std::string& label, const std::string& genre) {
  static const std::map<std::pair<std::string, std::string>, std::string> p = {
      {{"pos", "comedy"}, "hilarious"},
      {{"pos", "action"}, "explosive"},
      {{"pos", "drama"}, "painfully"},
      {{"neg", "comedy"}, "outrageous"},
      {{"neg", "action"}, "frantic"},
      {{"neg", "drama"}, "touching"},
  };
  return p.at({label, genre});
}

constexpr double kOwnPivotProb = 0.15;
constexpr double kCrossPivotProb = 0.30;
constexpr double kAdverbProb = 0.30;
constexpr double kMildRegisterProb = 0.30;
constexpr int kEmbeddingDim = 50;
constexpr double kNoiseAmplitude = 0.30;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[rng() % v.size()];
}

bool chance(double p, std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

std::string make_text(const std::string& label, const std::string& genre,
                      std::mt19937_64& rng) {
  const bool positive = label == "pos";
  const auto& mild = positive ? kMildPos : kMildNeg;
  const auto& advs = positive ? kPosAdv : kNegAdv;
  // A quarter of the documents use only mild vocabulary, so faintly worded
  // reviews are part of the clean distribution rather than outliers.
  const bool mild_register = chance(kMildRegisterProb, rng);
  const auto& strong =
      mild_register ? mild : (positive ? kStrongPos : kStrongNeg);
  std::vector<std::string> words;
  auto add = [&](const std::string& w) { words.push_back(w); };
  const int sentences = 3 + static_cast<int>(rng() % 3);
  for (int s = 0; s < sentences; ++s) {
    switch (rng() % 4) {
      case 0:
        add("the"); add(pick(kNouns, rng)); add("was");
        if (!mild_register && chance(kAdverbProb, rng)) add(pick(advs, rng));
        add(pick(strong, rng)); add(".");
        break;
      case 1:
        add("the"); add(pick(kNouns, rng)); add("felt");
        add(pick(mild, rng)); add("and"); add(pick(strong, rng)); add(".");
        break;
      case 2:
        add("it"); add("was"); add("a"); add(pick(strong, rng));
        add(pick(kNouns, rng)); add(".");
        break;
      default:
        add("the"); add(pick(kNouns, rng)); add(pick(kVerbs, rng));
        add(pick(strong, rng)); add(".");
        break;
    }
  }
  if (chance(kOwnPivotProb, rng)) {
    add("the"); add(pick(kNouns, rng)); add("was");
    add(pivot(label, genre)); add(".");
  }
  const std::string& opposite = positive ? kLabels[0] : kLabels[1];
  for (const auto& g : kGenres) {
    if (g == genre) continue;
    if (chance(kCrossPivotProb, rng)) {
      add("the"); add(pick(kNouns, rng)); add("was");
      add(pivot(opposite, g)); add(".");
    }
  }
  std::string text;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0 && words[i] != ".") text.push_back(' ');
    text += words[i];
  }
  return text;
}

void write_corpus(const std::string& path, int docs, const char* prefix,
                  std::mt19937_64& rng) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write file: " + path);
  out << "id,text,label,subcategory\n";
  for (int i = 0; i < docs; ++i) {
    const std::string& label = kLabels[static_cast<std::size_t>(i % 2)];
    const std::string& genre = kGenres[static_cast<std::size_t>((i / 2) % 3)];
    char id[32];
    std::snprintf(id, sizeof(id), "%s%05d", prefix, i);
    out << id << "," << csv_quote(make_text(label, genre, rng)) << "," << label
        << "," << genre << "\n";
  }
}

void write_embeddings(const std::string& path, std::uint64_t seed) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write file: " + path);
  for (const auto& [word, sentiment] : sentiment_table()) {
    std::mt19937_64 wrng(seed ^ fnv1a(word));
    std::uniform_real_distribution<double> noise(-kNoiseAmplitude,
                                                 kNoiseAmplitude);
    out << word;
    for (int d = 0; d < kEmbeddingDim; ++d) {
      double v;
      if (d == 0) v = sentiment;
      else if (d == 1) v = 1.0;
      else v = noise(wrng);
      char buf[32];
      std::snprintf(buf, sizeof(buf), " %.6f", v);
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace

void write_fixture(const std::string& dir, std::uint64_t seed, int train_docs,
                   int test_docs) {
  std::filesystem::create_directories(dir);
  std::mt19937_64 rng(seed);
  write_corpus(dir + "/train.csv", train_docs, "tr", rng);
  write_corpus(dir + "/test.csv", test_docs, "te", rng);
  write_embeddings(dir + "/embeddings.txt", seed);
}

}  // namespace advtext::fixture
