#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace premodtag {

// Reproducibility record written alongside every file-producing run: the
// subcommand, the full effective parameter set, and content digests of all
// inputs and outputs.
struct RunManifest {
  std::string subcommand;
  nlohmann::json config = nlohmann::json::object();
  std::vector<std::pair<std::string, std::string>> inputs;   // (path, sha256)
  std::vector<std::pair<std::string, std::string>> outputs;  // (path, sha256)

  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);

  nlohmann::json to_json() const;

  // Writes to a temp file in the target directory and renames into place.
  void write_atomic(const std::filesystem::path& path) const;
};

}  // namespace premodtag
