#pragma once

// Temporary directories and synthetic datasets on disk.

#include <filesystem>
#include <string>
#include <vector>

namespace kpeval::testkit {

namespace fs = std::filesystem;

/// Fresh directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

void write_file(const fs::path& path, const std::string& content);

struct SyntheticDataset {
  fs::path root;
  fs::path lexicon;
  std::vector<std::string> systems;   // sys0 .. sys5, sysN deletes N*10% of sentences
  std::vector<double> deletion_rates;
};

/// `topics` topics, 3 models each, one peer per deletion rate derived from
/// model 0 by removing that share of its sentences. Seeded and reproducible.
SyntheticDataset write_deletion_dataset(const fs::path& root, unsigned seed, std::size_t topics = 5,
                                        std::size_t sentences_per_model = 10);

}  // namespace kpeval::testkit
