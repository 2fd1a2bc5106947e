#include "fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <random>
#include <stdexcept>

#include <fmt/format.h>
#include <unistd.h>

#include "synthetic.hpp"

namespace kpeval::testkit {

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() / fmt::format("kpeval-{}-{}-{}", tag, ::getpid(), counter++);
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

SyntheticDataset write_deletion_dataset(const fs::path& root, unsigned seed, std::size_t topics,
                                        std::size_t sentences_per_model) {
  std::mt19937 rng(seed);
  const auto vocab = make_vocabulary("", 40, 10, 8, 4);
  SyntheticDataset ds;
  ds.root = root / "dataset";
  ds.lexicon = root / "lexicon.tsv";
  write_file(ds.lexicon, vocab.lexicon_tsv());
  for (int d = 0; d <= 5; ++d) {
    ds.systems.push_back(fmt::format("sys{}", d));
    ds.deletion_rates.push_back(d / 10.0);
  }

  for (std::size_t t = 0; t < topics; ++t) {
    const auto topic = fmt::format("topic{:02}", t);
    // topic pool: models share most of their content
    const auto pool = random_sentences(vocab, rng, sentences_per_model + 4);
    std::vector<std::vector<std::string>> models;
    for (int m = 0; m < 3; ++m) {
      auto chosen = pool;
      std::shuffle(chosen.begin(), chosen.end(), rng);
      chosen.resize(sentences_per_model);
      models.push_back(chosen);
      write_file(ds.root / topic / "models" / fmt::format("model{}.txt", m), join_sentences(chosen));
    }
    // nested deletions: one permutation, delete its first k sentences
    std::vector<std::size_t> order(sentences_per_model);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t d = 0; d < ds.systems.size(); ++d) {
      const auto remove = static_cast<std::size_t>(std::lround(ds.deletion_rates[d] * sentences_per_model));
      std::vector<bool> keep(sentences_per_model, true);
      for (std::size_t i = 0; i < remove; ++i) keep[order[i]] = false;
      std::vector<std::string> kept;
      for (std::size_t i = 0; i < sentences_per_model; ++i) {
        if (keep[i]) kept.push_back(models[0][i]);
      }
      write_file(ds.root / topic / "peers" / (ds.systems[d] + ".txt"), join_sentences(kept));
    }
  }
  return ds;
}

}  // namespace kpeval::testkit
