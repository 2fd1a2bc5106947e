#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace kpeval::app {

namespace fs = std::filesystem;

struct TopicFiles {
  std::string id;
  /// system_id -> peer summary
  std::map<std::string, fs::path> peers;
  /// reference summaries, sorted by file name
  std::vector<fs::path> models;
};

struct DatasetLayout {
  fs::path root;
  /// sorted by id
  std::vector<TopicFiles> topics;

  /// Union of system ids over all topics, sorted.
  std::vector<std::string> system_ids() const;
};

/// Discovers `root/<topic>/peers/<system_id>.txt` and
/// `root/<topic>/models/<model_id>.txt`. A topic without a models directory,
/// or with an empty one, is an error naming the topic.
DatasetLayout scan_dataset(const fs::path& root);

/// Manifest alternative to the directory convention:
///   { "topics": { "<topic>": { "peers": { "<system>": "path" },
///                               "models": [ "path", ... ] } } }
/// Relative paths resolve against the manifest's directory.
DatasetLayout load_manifest(const fs::path& manifest_path);

std::string read_text_file(const fs::path& path);

/// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace kpeval::app
