#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fbar {

inline constexpr const char* kToolVersion = "fbar 0.1.0";

struct FileDigest {
  std::string path;
  std::string sha256;  // lowercase hex
};

/// Record of one successful run. Deliberately free of timestamps and host
/// details so repeated runs produce identical bytes.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> arguments;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;  // paths relative to the output directory
  std::string tool_version = kToolVersion;

  std::string to_json() const;
};

std::string sha256_hex(const std::string& bytes);
FileDigest digest_file(const std::filesystem::path& p, const std::string& shown_as);

}  // namespace fbar
