#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "advtext/lexicons.hpp"
#include "advtext/textcore.hpp"

namespace advtext {

enum class Arch { MeanPool, Conv };

const char* to_string(Arch a);
Arch arch_from_string(std::string_view s);

struct ModelConfig {
  int hidden_units = 64;
  int epochs = 10;
  double learning_rate = 0.05;
  int batch_size = 32;
  std::uint64_t seed = 0;
  double l2 = 1e-4;
  Arch architecture = Arch::MeanPool;
  int conv_window = 3;  // conv only
};

// Two-class net over frozen word embeddings:
//   mean-pool: mean(embeddings) -> ReLU hidden -> softmax
//   conv: 1-D conv (hidden_units filters) + max pool -> ReLU hidden -> softmax
struct Model {
  ModelConfig config;
  Eigen::Index embedding_dim = 0;
  std::array<std::string, 2> label_order;

  Eigen::MatrixXd conv_weights;  // filters x (conv_window * dim); conv only
  Eigen::VectorXd conv_bias;
  Eigen::MatrixXd hidden_weights;  // hidden_units x input
  Eigen::VectorXd hidden_bias;
  Eigen::MatrixXd output_weights;  // 2 x hidden_units
  Eigen::VectorXd output_bias;

  int label_index(const std::string& label) const;
};

struct Prediction {
  std::array<double, 2> probs{0.5, 0.5};
  bool degenerate = false;  // empty document

  int argmax() const { return probs[1] > probs[0] ? 1 : 0; }
};

std::vector<Eigen::VectorXd> embed_document(const Document& doc,
                                            const EmbeddingTable& table);

// Forward pass over explicit per-token embedding vectors; empty input
// yields the degenerate uniform prediction.
Prediction predict_embedded(const Model& model,
                            std::span<const Eigen::VectorXd> embeds);

Prediction predict_proba(const Model& model, const EmbeddingTable& table,
                         const Document& doc);

// dJ/de_k per token, J = cross-entropy of the model at (doc, label).
std::vector<Eigen::VectorXd> input_gradient(const Model& model,
                                            const EmbeddingTable& table,
                                            const Document& doc,
                                            const std::string& label);
std::vector<Eigen::VectorXd> input_gradient_embedded(
    const Model& model, std::span<const Eigen::VectorXd> embeds,
    int label_index);

// Mini-batch SGD on mean cross-entropy + L2; deterministic given the seed.
Model train(const Corpus& corpus, const EmbeddingTable& table,
            const ModelConfig& config);

// Versioned binary container, magic `ADVTXT01`; layout documented in the
// README.
void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace advtext
