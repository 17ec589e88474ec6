#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "advtext/classifier.hpp"
#include "advtext/errors.hpp"
#include "helpers.hpp"

using namespace advtext;

namespace {

double cross_entropy(const Model& model,
                     const std::vector<Eigen::VectorXd>& embeds, int label) {
  auto pred = predict_embedded(model, embeds);
  return -std::log(pred.probs[static_cast<std::size_t>(label)]);
}

Corpus toy_corpus(const EmbeddingTable& table, int docs_per_class) {
  Corpus corpus;
  corpus.labels = {"neg", "pos"};
  std::mt19937_64 rng(99);
  const std::vector<std::string> pos_words = {"good", "great", "fine"};
  const std::vector<std::string> neg_words = {"bad", "awful", "dull"};
  int id = 0;
  for (int i = 0; i < docs_per_class; ++i) {
    for (int c = 0; c < 2; ++c) {
      Document d;
      d.id = "t" + std::to_string(id++);
      d.label = corpus.labels[static_cast<std::size_t>(c)];
      const auto& words = c == 1 ? pos_words : neg_words;
      for (int k = 0; k < 3; ++k) {
        Token t;
        t.normalized = t.surface = words[rng() % words.size()];
        t.position = k;
        t.pos = Pos::Adj;
        d.tokens.push_back(t);
      }
      corpus.documents.push_back(std::move(d));
    }
  }
  (void)table;
  return corpus;
}

EmbeddingTable toy_table() {
  return testutil::make_embeddings({{"good", 0.8},
                                    {"great", 1.0},
                                    {"fine", 0.4},
                                    {"bad", -0.8},
                                    {"awful", -1.0},
                                    {"dull", -0.5}},
                                   6, 0.2);
}

}  // namespace

TEST_CASE("predict_embedded is a softmax over the two classes") {
  auto model = testutil::make_linear_model();
  std::vector<Eigen::VectorXd> embeds{Eigen::VectorXd::Zero(4)};
  embeds[0][0] = 1.0;
  auto pred = predict_embedded(model, embeds);
  CHECK(pred.probs[0] + pred.probs[1] == doctest::Approx(1.0));
  CHECK(pred.probs[1] > 0.9);
  CHECK(pred.argmax() == 1);
  CHECK_FALSE(pred.degenerate);
}

TEST_CASE("empty documents yield the degenerate uniform prediction") {
  auto model = testutil::make_linear_model();
  auto pred = predict_embedded(model, {});
  CHECK(pred.degenerate);
  CHECK(pred.probs[0] == doctest::Approx(0.5));
  CHECK(pred.probs[1] == doctest::Approx(0.5));
}

TEST_CASE("input gradients match central finite differences") {
  const double h = 1e-5;
  for (auto arch : {Arch::MeanPool, Arch::Conv}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto model = testutil::make_random_model(seed, 4, arch);
      std::mt19937_64 rng(seed * 31 + 7);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      std::vector<Eigen::VectorXd> embeds;
      const int tokens = 2 + static_cast<int>(seed % 4);
      for (int t = 0; t < tokens; ++t) {
        Eigen::VectorXd v(4);
        for (int d = 0; d < 4; ++d) v[d] = dist(rng);
        embeds.push_back(std::move(v));
      }
      const int label = static_cast<int>(seed % 2);
      auto grads = input_gradient_embedded(model, embeds, label);
      REQUIRE(grads.size() == embeds.size());
      for (std::size_t t = 0; t < embeds.size(); ++t) {
        for (int d = 0; d < 4; ++d) {
          auto plus = embeds;
          auto minus = embeds;
          plus[t][d] += h;
          minus[t][d] -= h;
          double fd = (cross_entropy(model, plus, label) -
                       cross_entropy(model, minus, label)) /
                      (2 * h);
          CHECK(grads[t][d] == doctest::Approx(fd).epsilon(1e-5));
        }
      }
    }
  }
}

TEST_CASE("train separates an easy corpus and is deterministic") {
  auto table = toy_table();
  auto corpus = toy_corpus(table, 40);
  ModelConfig cfg;
  cfg.hidden_units = 8;
  cfg.epochs = 30;
  cfg.seed = 5;
  Model a = train(corpus, table, cfg);
  Model b = train(corpus, table, cfg);
  CHECK(a.hidden_weights == b.hidden_weights);
  CHECK(a.output_weights == b.output_weights);
  CHECK(a.label_order == std::array<std::string, 2>{"neg", "pos"});

  int correct = 0;
  for (const auto& doc : corpus.documents) {
    auto pred = predict_proba(a, table, doc);
    if (a.label_order[static_cast<std::size_t>(pred.argmax())] == doc.label) {
      ++correct;
    }
  }
  CHECK(correct == static_cast<int>(corpus.documents.size()));

  Model c = train(corpus, table, [&] {
    auto other = cfg;
    other.seed = 6;
    return other;
  }());
  CHECK(a.hidden_weights != c.hidden_weights);
}

TEST_CASE("conv architecture also learns the toy corpus") {
  auto table = toy_table();
  auto corpus = toy_corpus(table, 30);
  ModelConfig cfg;
  cfg.architecture = Arch::Conv;
  cfg.hidden_units = 8;
  cfg.epochs = 150;
  cfg.learning_rate = 0.15;
  cfg.seed = 11;
  Model m = train(corpus, table, cfg);
  int correct = 0;
  for (const auto& doc : corpus.documents) {
    auto pred = predict_proba(m, table, doc);
    if (m.label_order[static_cast<std::size_t>(pred.argmax())] == doc.label) {
      ++correct;
    }
  }
  CHECK(correct >= static_cast<int>(corpus.documents.size()) - 2);
}

TEST_CASE("train rejects non-binary and empty classes") {
  auto table = toy_table();
  auto corpus = toy_corpus(table, 3);
  corpus.labels.push_back("meh");
  try {
    train(corpus, table, {});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotBinary);
  }

  auto empty_class = toy_corpus(table, 3);
  std::erase_if(empty_class.documents,
                [](const Document& d) { return d.label == "neg"; });
  try {
    train(empty_class, table, {});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyClass);
  }
}

TEST_CASE("save and load round-trip both architectures") {
  testutil::ScratchDir dir("model");
  auto table = toy_table();
  auto corpus = toy_corpus(table, 10);
  for (auto arch : {Arch::MeanPool, Arch::Conv}) {
    ModelConfig cfg;
    cfg.architecture = arch;
    cfg.hidden_units = 6;
    cfg.epochs = 5;
    cfg.seed = 3;
    Model m = train(corpus, table, cfg);
    auto path = dir.file("m.advtxt");
    save_model(m, path);
    Model back = load_model(path);
    CHECK(back.config.architecture == arch);
    CHECK(back.label_order == m.label_order);
    CHECK(back.hidden_weights == m.hidden_weights);
    CHECK(back.output_bias == m.output_bias);
    if (arch == Arch::Conv) CHECK(back.conv_weights == m.conv_weights);
    for (const auto& doc : corpus.documents) {
      auto p1 = predict_proba(m, table, doc);
      auto p2 = predict_proba(back, table, doc);
      CHECK(p1.probs[0] == doctest::Approx(p2.probs[0]).epsilon(1e-12));
    }
  }
}

TEST_CASE("load_model distinguishes corrupt files from version skew") {
  testutil::ScratchDir dir("modelbad");
  auto bad = dir.write("bad.advtxt", "not a model at all");
  try {
    load_model(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CorruptFile);
  }

  auto newer = dir.write("newer.advtxt", std::string("ADVTXT99") + "rest");
  try {
    load_model(newer);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::VersionMismatch);
  }

  // valid header, truncated payload
  auto table = toy_table();
  Model m = train(toy_corpus(table, 5), table, {});
  auto path = dir.file("trunc.advtxt");
  save_model(m, path);
  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), {});
  std::ofstream out(path, std::ios::binary);
  out << bytes.substr(0, bytes.size() - 16);
  out.close();
  try {
    load_model(path);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CorruptFile);
  }
}
