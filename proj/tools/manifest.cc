#include "manifest.h"

#include <algorithm>
#include <cstdio>

#include <json.hpp>
#include <openssl/evp.h>

#include "vermilion/error.h"
#include "vermilion/matrix_io.h"

namespace vermilion::cli {

void RunManifest::SetArg(const std::string& name, std::vector<std::string> values) {
  for (auto& [key, vals] : args) {
    if (key == name) {
      vals = std::move(values);
      return;
    }
  }
  args.emplace_back(name, std::move(values));
}

const std::vector<std::string>* RunManifest::FindArg(const std::string& name) const {
  for (const auto& [key, vals] : args) {
    if (key == name) return &vals;
  }
  return nullptr;
}

void RunManifest::AddInput(const std::string& path) {
  const bool seen = std::any_of(inputs.begin(), inputs.end(),
                                [&](const auto& in) { return in.first == path; });
  if (!seen) inputs.emplace_back(path, FileSha256(path));
}

std::string Sha256Hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string FileSha256(const std::string& path) { return Sha256Hex(ReadFileToString(path)); }

std::string ManifestToJson(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool"] = m.tool;
  j["version"] = m.version;
  j["subcommand"] = m.subcommand;
  j["seed"] = m.seed;
  nlohmann::ordered_json args = nlohmann::ordered_json::object();
  for (const auto& [key, vals] : m.args) {
    args[key] = vals.size() == 1 ? nlohmann::ordered_json(vals[0]) : nlohmann::ordered_json(vals);
  }
  j["args"] = args;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  for (const auto& [path, digest] : m.inputs) inputs[path] = digest;
  j["inputs"] = inputs;
  return j.dump(2) + "\n";
}

RunManifest ManifestFromJson(const std::string& text) {
  RunManifest m;
  try {
    const auto j = nlohmann::ordered_json::parse(text);
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.subcommand = j.at("subcommand").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [key, val] : j.at("args").items()) {
      std::vector<std::string> vals;
      if (val.is_array()) {
        vals = val.get<std::vector<std::string>>();
      } else {
        vals.push_back(val.get<std::string>());
      }
      m.args.emplace_back(key, std::move(vals));
    }
    for (const auto& [path, digest] : j.at("inputs").items()) {
      m.inputs.emplace_back(path, digest.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("manifest: ") + e.what());
  }
  if (m.tool != kToolName) throw Error(ErrorCode::kParse, "manifest: not a vermilion manifest");
  return m;
}

std::vector<std::string> ManifestToArgs(const RunManifest& m) {
  std::vector<std::string> out{m.subcommand};
  for (const auto& [key, vals] : m.args) {
    for (const std::string& v : vals) {
      out.push_back("--" + key);
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace vermilion::cli
