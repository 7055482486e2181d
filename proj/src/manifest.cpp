#include "premodtag/manifest.hpp"

#include <fstream>

#include "premodtag/digest.hpp"
#include "premodtag/errors.hpp"
#include "premodtag/version.hpp"

namespace premodtag {

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs.emplace_back(path.string(), sha256_file(path));
}

void RunManifest::add_output(const std::filesystem::path& path) {
  outputs.emplace_back(path.string(), sha256_file(path));
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["tool"] = "premodtag";
  j["version"] = std::string(kVersion);
  j["subcommand"] = subcommand;
  j["config"] = config;
  auto files = [](const std::vector<std::pair<std::string, std::string>>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [path, digest] : v)
      arr.push_back({{"path", path}, {"sha256", digest}});
    return arr;
  };
  j["inputs"] = files(inputs);
  j["outputs"] = files(outputs);
  return j;
}

void RunManifest::write_atomic(const std::filesystem::path& path) const {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write manifest: " + tmp.string());
    out << to_json().dump(2) << '\n';
    if (!out) throw IoError("failed writing manifest: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace premodtag
