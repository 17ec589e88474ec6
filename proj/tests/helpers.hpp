#pragma once

// Shared scaffolding for the unit tests: tiny in-memory lexicons and a
// scratch directory that cleans up after itself.

#include <unistd.h>

#include <Eigen/Core>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "advtext/classifier.hpp"
#include "advtext/lexicons.hpp"
#include "advtext/textcore.hpp"

namespace testutil {

class ScratchDir {
 public:
  explicit ScratchDir(const std::string& name)
      : path_(std::filesystem::temp_directory_path() /
              ("advtext_test_" + name + "_" + std::to_string(::getpid()))) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() { std::filesystem::remove_all(path_); }

  std::string file(const std::string& rel) const {
    return (path_ / rel).string();
  }
  const std::filesystem::path& path() const { return path_; }

  std::string write(const std::string& rel, const std::string& content) const {
    auto p = path_ / rel;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
  }

 private:
  std::filesystem::path path_;
};

// Embedding table where each listed word gets `head` as its first
// coordinate and deterministic per-word noise in the rest.
inline advtext::EmbeddingTable make_embeddings(
    const std::vector<std::pair<std::string, double>>& words, int dim = 4,
    double noise = 0.0) {
  advtext::EmbeddingTable table;
  table.dimension = dim;
  table.oov = Eigen::VectorXd::Zero(dim);
  std::size_t i = 0;
  for (const auto& [word, head] : words) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v[0] = head;
    if (noise != 0.0) {
      std::mt19937_64 rng(i * 7919 + 17);
      std::uniform_real_distribution<double> dist(-noise, noise);
      for (int d = 1; d < dim; ++d) v[d] = dist(rng);
    }
    table.vectors[word] = std::move(v);
    ++i;
  }
  return table;
}

inline advtext::Document make_doc(const std::string& text,
                                  const advtext::PosLexicon& lexicon,
                                  const std::string& id = "d0",
                                  const std::string& label = "",
                                  const std::string& subcategory = "") {
  advtext::Document doc;
  doc.id = id;
  doc.raw = text;
  doc.label = label;
  doc.subcategory = subcategory;
  doc.tokens = advtext::tokenize(text);
  advtext::tag_pos(doc.tokens, lexicon);
  return doc;
}

// A minimal hand-weighted mean-pool model: logit difference is
// proportional to the first embedding coordinate, label_order {neg, pos}.
inline advtext::Model make_linear_model(int dim = 4, double gain = 4.0) {
  advtext::Model m;
  m.config.hidden_units = 2;
  m.embedding_dim = dim;
  m.label_order = {"neg", "pos"};
  m.hidden_weights = Eigen::MatrixXd::Zero(2, dim);
  m.hidden_weights(0, 0) = 1.0;   // positive part
  m.hidden_weights(1, 0) = -1.0;  // negative part
  m.hidden_bias = Eigen::VectorXd::Zero(2);
  m.output_weights = Eigen::MatrixXd::Zero(2, 2);
  m.output_weights(1, 0) = gain;
  m.output_weights(0, 1) = gain;
  m.output_bias = Eigen::VectorXd::Zero(2);
  return m;
}

// Random dense model for gradient checks.
inline advtext::Model make_random_model(std::uint64_t seed, int dim,
                                        advtext::Arch arch,
                                        int hidden = 5, int window = 3) {
  advtext::Model m;
  m.config.hidden_units = hidden;
  m.config.architecture = arch;
  m.config.conv_window = window;
  m.embedding_dim = dim;
  m.label_order = {"neg", "pos"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-0.8, 0.8);
  auto fill = [&](Eigen::MatrixXd& mat, Eigen::Index r, Eigen::Index c) {
    mat.resize(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < c; ++j) mat(i, j) = dist(rng);
    }
  };
  auto fillv = [&](Eigen::VectorXd& v, Eigen::Index n) {
    v.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = dist(rng);
  };
  Eigen::Index input = dim;
  if (arch == advtext::Arch::Conv) {
    fill(m.conv_weights, hidden, static_cast<Eigen::Index>(window) * dim);
    fillv(m.conv_bias, hidden);
    input = hidden;
  }
  fill(m.hidden_weights, hidden, input);
  fillv(m.hidden_bias, hidden);
  fill(m.output_weights, 2, hidden);
  fillv(m.output_bias, 2);
  return m;
}

}  // namespace testutil
