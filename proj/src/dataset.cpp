#include "kpeval/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "json.hpp"
#include "kpeval/error.hpp"

namespace kpeval::app {

namespace {

std::vector<fs::path> text_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

void check_readable(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot read {}", p.string()));
}

}  // namespace

std::vector<std::string> DatasetLayout::system_ids() const {
  std::set<std::string> ids;
  for (const auto& t : topics) {
    for (const auto& [id, path] : t.peers) ids.insert(id);
  }
  return {ids.begin(), ids.end()};
}

DatasetLayout scan_dataset(const fs::path& root) {
  if (!fs::is_directory(root)) throw Error(fmt::format("dataset root {} is not a directory", root.string()));
  DatasetLayout layout;
  layout.root = root;
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    TopicFiles topic;
    topic.id = dir.filename().string();
    const auto models_dir = dir / "models";
    if (!fs::is_directory(models_dir)) throw Error(fmt::format("topic {}: missing models directory", topic.id));
    topic.models = text_files(models_dir);
    if (topic.models.empty()) throw Error(fmt::format("topic {}: no model summaries", topic.id));
    const auto peers_dir = dir / "peers";
    if (fs::is_directory(peers_dir)) {
      for (const auto& p : text_files(peers_dir)) topic.peers[p.stem().string()] = p;
    }
    for (const auto& m : topic.models) check_readable(m);
    for (const auto& [id, p] : topic.peers) check_readable(p);
    layout.topics.push_back(std::move(topic));
  }
  if (layout.topics.empty()) throw Error(fmt::format("no topics found under {}", root.string()));
  return layout;
}

DatasetLayout load_manifest(const fs::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw Error(fmt::format("cannot open manifest {}", manifest_path.string()));
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(fmt::format("{}: {}", manifest_path.string(), e.what()));
  }
  DatasetLayout layout;
  layout.root = manifest_path.parent_path();
  auto resolve = [&](const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : layout.root / path;
  };
  try {
    for (const auto& [id, entry] : j.at("topics").items()) {
      TopicFiles topic;
      topic.id = id;
      if (entry.contains("peers")) {
        for (const auto& [sys, path] : entry.at("peers").items()) topic.peers[sys] = resolve(path.get<std::string>());
      }
      if (entry.contains("models")) {
        for (const auto& path : entry.at("models")) topic.models.push_back(resolve(path.get<std::string>()));
      }
      if (topic.models.empty()) throw Error(fmt::format("topic {}: no model summaries", id));
      for (const auto& m : topic.models) check_readable(m);
      for (const auto& [sys, p] : topic.peers) check_readable(p);
      layout.topics.push_back(std::move(topic));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(fmt::format("{}: {}", manifest_path.string(), e.what()));
  }
  std::sort(layout.topics.begin(), layout.topics.end(),
            [](const TopicFiles& a, const TopicFiles& b) { return a.id < b.id; });
  if (layout.topics.empty()) throw Error(fmt::format("no topics found in {}", manifest_path.string()));
  return layout;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot read {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

}  // namespace kpeval::app
