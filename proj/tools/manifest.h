#ifndef VERMILION_TOOLS_MANIFEST_H_
#define VERMILION_TOOLS_MANIFEST_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace vermilion::cli {

inline constexpr const char* kToolName = "vermilion";
inline constexpr const char* kToolVersion = "0.1.0";

// Everything needed to repeat a run: the subcommand, every resolved flag
// (defaults included) and digests of the files it read.
struct RunManifest {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  std::string subcommand;
  // Flag name without dashes -> values (several for repeatable flags).
  std::vector<std::pair<std::string, std::vector<std::string>>> args;
  std::vector<std::pair<std::string, std::string>> inputs;  // path -> sha256
  std::uint64_t seed = 0;

  void SetArg(const std::string& name, std::vector<std::string> values);
  const std::vector<std::string>* FindArg(const std::string& name) const;
  void AddInput(const std::string& path);
};

std::string Sha256Hex(const std::string& bytes);
std::string FileSha256(const std::string& path);

std::string ManifestToJson(const RunManifest& m);
// Throws Error{Parse}.
RunManifest ManifestFromJson(const std::string& text);

// Subcommand followed by `--name value` pairs.
std::vector<std::string> ManifestToArgs(const RunManifest& m);

}  // namespace vermilion::cli

#endif  // VERMILION_TOOLS_MANIFEST_H_
