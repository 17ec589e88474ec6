#include "advtext/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>

#include <json.hpp>

#include "advtext/errors.hpp"

namespace advtext {

using nlohmann::json;

const char* to_string(Arch a) {
  return a == Arch::Conv ? "conv" : "mean-pool";
}

Arch arch_from_string(std::string_view s) {
  if (s == "mean-pool") return Arch::MeanPool;
  if (s == "conv") return Arch::Conv;
  throw Error(Errc::ConfigError, "unknown architecture: " + std::string(s));
}

int Model::label_index(const std::string& label) const {
  if (label == label_order[0]) return 0;
  if (label == label_order[1]) return 1;
  throw Error(Errc::UnknownLabel, "label not in model: " + label);
}

std::vector<Eigen::VectorXd> embed_document(const Document& doc,
                                            const EmbeddingTable& table) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(doc.tokens.size());
  for (const auto& t : doc.tokens) out.push_back(table.lookup(t.normalized));
  return out;
}

namespace {

struct ForwardCache {
  Eigen::VectorXd pooled;  // mean-pool input or conv max-pool output
  Eigen::VectorXd z1, hidden, logits;
  std::array<double, 2> probs;
  std::vector<int> argmax_window;  // conv: winning window start per filter
};

Eigen::VectorXd conv_window_vec(std::span<const Eigen::VectorXd> embeds,
                                int start, int window, Eigen::Index dim) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(window * dim);
  const int n = static_cast<int>(embeds.size());
  for (int j = 0; j < window; ++j) {
    if (start + j < n) u.segment(static_cast<Eigen::Index>(j) * dim, dim) =
        embeds[static_cast<std::size_t>(start + j)];
  }
  return u;
}

ForwardCache forward(const Model& m, std::span<const Eigen::VectorXd> embeds) {
  ForwardCache c;
  const int n = static_cast<int>(embeds.size());
  if (m.config.architecture == Arch::MeanPool) {
    c.pooled = Eigen::VectorXd::Zero(m.embedding_dim);
    for (const auto& e : embeds) c.pooled += e;
    c.pooled /= static_cast<double>(n);
  } else {
    const int filters = m.config.hidden_units;
    const int window = m.config.conv_window;
    c.pooled = Eigen::VectorXd::Zero(filters);
    c.argmax_window.assign(static_cast<std::size_t>(filters), 0);
    Eigen::MatrixXd acts(filters, n);
    for (int t = 0; t < n; ++t) {
      acts.col(t) =
          m.conv_weights * conv_window_vec(embeds, t, window, m.embedding_dim) +
          m.conv_bias;
    }
    for (int f = 0; f < filters; ++f) {
      int best = 0;
      for (int t = 1; t < n; ++t) {
        if (acts(f, t) > acts(f, best)) best = t;
      }
      c.pooled[f] = acts(f, best);
      c.argmax_window[static_cast<std::size_t>(f)] = best;
    }
  }
  c.z1 = m.hidden_weights * c.pooled + m.hidden_bias;
  c.hidden = c.z1.cwiseMax(0.0);
  c.logits = m.output_weights * c.hidden + m.output_bias;
  double mx = std::max(c.logits[0], c.logits[1]);
  double e0 = std::exp(c.logits[0] - mx);
  double e1 = std::exp(c.logits[1] - mx);
  c.probs = {e0 / (e0 + e1), e1 / (e0 + e1)};
  return c;
}

struct Gradients {
  Eigen::MatrixXd conv_w, hidden_w, output_w;
  Eigen::VectorXd conv_b, hidden_b, output_b;

  explicit Gradients(const Model& m) {
    if (m.config.architecture == Arch::Conv) {
      conv_w = Eigen::MatrixXd::Zero(m.conv_weights.rows(), m.conv_weights.cols());
      conv_b = Eigen::VectorXd::Zero(m.conv_bias.size());
    }
    hidden_w = Eigen::MatrixXd::Zero(m.hidden_weights.rows(), m.hidden_weights.cols());
    hidden_b = Eigen::VectorXd::Zero(m.hidden_bias.size());
    output_w = Eigen::MatrixXd::Zero(m.output_weights.rows(), m.output_weights.cols());
    output_b = Eigen::VectorXd::Zero(m.output_bias.size());
  }
};

// Backward pass for cross-entropy at label `y`; accumulates parameter
// gradients when `grads` is non-null and returns input-embedding gradients
// when `want_input` is set.
std::vector<Eigen::VectorXd> backward(const Model& m,
                                      std::span<const Eigen::VectorXd> embeds,
                                      const ForwardCache& c, int y,
                                      Gradients* grads, bool want_input) {
  const int n = static_cast<int>(embeds.size());
  Eigen::Vector2d dz2(c.probs[0], c.probs[1]);
  dz2[y] -= 1.0;
  if (grads) {
    grads->output_w += dz2 * c.hidden.transpose();
    grads->output_b += dz2;
  }
  Eigen::VectorXd dh = m.output_weights.transpose() * dz2;
  Eigen::VectorXd dz1 =
      dh.array() * (c.z1.array() > 0.0).cast<double>();
  if (grads) {
    grads->hidden_w += dz1 * c.pooled.transpose();
    grads->hidden_b += dz1;
  }
  Eigen::VectorXd dpooled = m.hidden_weights.transpose() * dz1;
  std::vector<Eigen::VectorXd> input_grads;
  if (want_input) {
    input_grads.assign(static_cast<std::size_t>(n),
                       Eigen::VectorXd::Zero(m.embedding_dim));
  }
  if (m.config.architecture == Arch::MeanPool) {
    if (want_input) {
      Eigen::VectorXd per_token = dpooled / static_cast<double>(n);
      for (auto& g : input_grads) g = per_token;
    }
  } else {
    const int window = m.config.conv_window;
    for (int f = 0; f < m.config.hidden_units; ++f) {
      double g = dpooled[f];
      if (g == 0.0) continue;
      int t = c.argmax_window[static_cast<std::size_t>(f)];
      if (grads) {
        grads->conv_w.row(f) +=
            g * conv_window_vec(embeds, t, window, m.embedding_dim).transpose();
        grads->conv_b[f] += g;
      }
      if (want_input) {
        for (int j = 0; j < window && t + j < n; ++j) {
          input_grads[static_cast<std::size_t>(t + j)] +=
              g * m.conv_weights.row(f)
                      .segment(static_cast<Eigen::Index>(j) * m.embedding_dim,
                               m.embedding_dim)
                      .transpose();
        }
      }
    }
  }
  return input_grads;
}

}  // namespace

Prediction predict_embedded(const Model& model,
                            std::span<const Eigen::VectorXd> embeds) {
  Prediction p;
  if (embeds.empty()) {
    p.degenerate = true;
    return p;
  }
  p.probs = forward(model, embeds).probs;
  return p;
}

Prediction predict_proba(const Model& model, const EmbeddingTable& table,
                         const Document& doc) {
  auto embeds = embed_document(doc, table);
  return predict_embedded(model, embeds);
}

std::vector<Eigen::VectorXd> input_gradient_embedded(
    const Model& model, std::span<const Eigen::VectorXd> embeds,
    int label_index) {
  if (embeds.empty()) {
    throw Error(Errc::EmptyDocument, "cannot take gradients of an empty document");
  }
  auto cache = forward(model, embeds);
  return backward(model, embeds, cache, label_index, nullptr, true);
}

std::vector<Eigen::VectorXd> input_gradient(const Model& model,
                                            const EmbeddingTable& table,
                                            const Document& doc,
                                            const std::string& label) {
  auto embeds = embed_document(doc, table);
  return input_gradient_embedded(model, embeds, model.label_index(label));
}

Model train(const Corpus& corpus, const EmbeddingTable& table,
            const ModelConfig& config) {
  if (corpus.labels.size() != 2) {
    throw Error(Errc::NotBinary, "attack mode needs exactly 2 labels, got " +
                                     std::to_string(corpus.labels.size()));
  }
  Model m;
  m.config = config;
  m.embedding_dim = table.dimension;
  m.label_order = {corpus.labels[0], corpus.labels[1]};

  std::vector<std::vector<Eigen::VectorXd>> embedded;
  std::vector<int> labels;
  std::array<int, 2> class_counts{0, 0};
  for (const auto& doc : corpus.documents) {
    int y = m.label_index(doc.label);
    ++class_counts[static_cast<std::size_t>(y)];
    if (doc.tokens.empty()) continue;  // no gradient signal from empty docs
    embedded.push_back(embed_document(doc, table));
    labels.push_back(y);
  }
  if (class_counts[0] == 0 || class_counts[1] == 0) {
    throw Error(Errc::EmptyClass,
                "class without documents: " +
                    m.label_order[class_counts[0] == 0 ? 0 : 1]);
  }

  const Eigen::Index input_dim = config.architecture == Arch::Conv
                                     ? config.hidden_units
                                     : m.embedding_dim;
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> init(-0.05, 0.05);
  auto fill = [&](auto& mat) {
    for (Eigen::Index i = 0; i < mat.rows(); ++i) {
      for (Eigen::Index j = 0; j < mat.cols(); ++j) mat(i, j) = init(rng);
    }
  };
  if (config.architecture == Arch::Conv) {
    m.conv_weights.resize(config.hidden_units,
                          static_cast<Eigen::Index>(config.conv_window) *
                              m.embedding_dim);
    m.conv_bias.resize(config.hidden_units);
    fill(m.conv_weights);
    fill(m.conv_bias);
  }
  m.hidden_weights.resize(config.hidden_units, input_dim);
  m.hidden_bias.resize(config.hidden_units);
  m.output_weights.resize(2, config.hidden_units);
  m.output_bias.resize(2);
  fill(m.hidden_weights);
  fill(m.hidden_bias);
  fill(m.output_weights);
  fill(m.output_bias);

  std::vector<std::size_t> order(embedded.size());
  std::iota(order.begin(), order.end(), 0);
  const bool conv = config.architecture == Arch::Conv;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      std::size_t end = std::min(order.size(),
                                 start + static_cast<std::size_t>(config.batch_size));
      Gradients g(m);
      for (std::size_t i = start; i < end; ++i) {
        const auto& embeds = embedded[order[i]];
        auto cache = forward(m, embeds);
        backward(m, embeds, cache, labels[order[i]], &g, false);
      }
      double scale = 1.0 / static_cast<double>(end - start);
      // L2 applies to weight matrices, not biases
      if (conv) {
        m.conv_weights -=
            config.learning_rate * (scale * g.conv_w + config.l2 * m.conv_weights);
        m.conv_bias -= config.learning_rate * scale * g.conv_b;
      }
      m.hidden_weights -=
          config.learning_rate * (scale * g.hidden_w + config.l2 * m.hidden_weights);
      m.hidden_bias -= config.learning_rate * scale * g.hidden_b;
      m.output_weights -=
          config.learning_rate * (scale * g.output_w + config.l2 * m.output_weights);
      m.output_bias -= config.learning_rate * scale * g.output_b;
    }
  }
  return m;
}

namespace {

constexpr char kMagic[8] = {'A', 'D', 'V', 'T', 'X', 'T', '0', '1'};

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double v = m(i, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
  }
}

void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(sizeof(double)) * v.size());
}

void read_matrix(std::istream& in, Eigen::MatrixXd& m, const std::string& path) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double v;
      if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) {
        throw Error(Errc::CorruptFile, path + ": truncated weight data");
      }
      m(i, j) = v;
    }
  }
}

void read_vector(std::istream& in, Eigen::VectorXd& v, const std::string& path) {
  if (!in.read(reinterpret_cast<char*>(v.data()),
               static_cast<std::streamsize>(sizeof(double)) * v.size())) {
    throw Error(Errc::CorruptFile, path + ": truncated weight data");
  }
}

}  // namespace

void save_model(const Model& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write file: " + path);
  out.write(kMagic, sizeof(kMagic));
  json meta = {
      {"version", 1},
      {"config",
       {{"hidden_units", model.config.hidden_units},
        {"epochs", model.config.epochs},
        {"learning_rate", model.config.learning_rate},
        {"batch_size", model.config.batch_size},
        {"seed", model.config.seed},
        {"l2", model.config.l2},
        {"architecture", to_string(model.config.architecture)},
        {"conv_window", model.config.conv_window}}},
      {"label_order", {model.label_order[0], model.label_order[1]}},
      {"embedding_dim", model.embedding_dim},
  };
  std::string meta_str = meta.dump();
  std::uint32_t len = static_cast<std::uint32_t>(meta_str.size());
  out.write(reinterpret_cast<const char*>(&len), sizeof(len));
  out.write(meta_str.data(), static_cast<std::streamsize>(meta_str.size()));
  if (model.config.architecture == Arch::Conv) {
    write_matrix(out, model.conv_weights);
    write_vector(out, model.conv_bias);
  }
  write_matrix(out, model.hidden_weights);
  write_vector(out, model.hidden_bias);
  write_matrix(out, model.output_weights);
  write_vector(out, model.output_bias);
  if (!out) throw Error(Errc::IoError, "failed writing model: " + path);
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open file: " + path);
  char magic[8];
  if (!in.read(magic, sizeof(magic))) {
    throw Error(Errc::CorruptFile, path + ": too short for a model file");
  }
  if (std::memcmp(magic, kMagic, 6) != 0) {
    throw Error(Errc::CorruptFile, path + ": bad magic bytes");
  }
  if (std::memcmp(magic, kMagic, 8) != 0) {
    throw Error(Errc::VersionMismatch,
                path + ": file format version " + std::string(magic + 6, 2) +
                    ", supported version 01");
  }
  std::uint32_t len = 0;
  if (!in.read(reinterpret_cast<char*>(&len), sizeof(len))) {
    throw Error(Errc::CorruptFile, path + ": missing metadata length");
  }
  std::string meta_str(len, '\0');
  if (!in.read(meta_str.data(), len)) {
    throw Error(Errc::CorruptFile, path + ": truncated metadata");
  }
  json meta;
  try {
    meta = json::parse(meta_str);
  } catch (const json::exception&) {
    throw Error(Errc::CorruptFile, path + ": metadata is not valid JSON");
  }
  int version = meta.value("version", 0);
  if (version != 1) {
    throw Error(Errc::VersionMismatch,
                path + ": metadata version " + std::to_string(version) +
                    ", supported version 1");
  }
  Model m;
  const auto& cfg = meta.at("config");
  m.config.hidden_units = cfg.at("hidden_units").get<int>();
  m.config.epochs = cfg.at("epochs").get<int>();
  m.config.learning_rate = cfg.at("learning_rate").get<double>();
  m.config.batch_size = cfg.at("batch_size").get<int>();
  m.config.seed = cfg.at("seed").get<std::uint64_t>();
  m.config.l2 = cfg.at("l2").get<double>();
  m.config.architecture = arch_from_string(cfg.at("architecture").get<std::string>());
  m.config.conv_window = cfg.at("conv_window").get<int>();
  m.label_order = {meta.at("label_order")[0].get<std::string>(),
                   meta.at("label_order")[1].get<std::string>()};
  m.embedding_dim = meta.at("embedding_dim").get<Eigen::Index>();

  const Eigen::Index input_dim = m.config.architecture == Arch::Conv
                                     ? m.config.hidden_units
                                     : m.embedding_dim;
  if (m.config.architecture == Arch::Conv) {
    m.conv_weights.resize(m.config.hidden_units,
                          static_cast<Eigen::Index>(m.config.conv_window) *
                              m.embedding_dim);
    m.conv_bias.resize(m.config.hidden_units);
    read_matrix(in, m.conv_weights, path);
    read_vector(in, m.conv_bias, path);
  }
  m.hidden_weights.resize(m.config.hidden_units, input_dim);
  m.hidden_bias.resize(m.config.hidden_units);
  m.output_weights.resize(2, m.config.hidden_units);
  m.output_bias.resize(2);
  read_matrix(in, m.hidden_weights, path);
  read_vector(in, m.hidden_bias, path);
  read_matrix(in, m.output_weights, path);
  read_vector(in, m.output_bias, path);
  return m;
}

}  // namespace advtext
