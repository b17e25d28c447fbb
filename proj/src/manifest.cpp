#include "fbar/manifest.hpp"

#include <openssl/evp.h>

#include <json.hpp>

#include "fbar/config_io.hpp"
#include "fbar/error.hpp"

namespace fbar {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw RuntimeFailure("SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xF];
  }
  return out;
}

FileDigest digest_file(const std::filesystem::path& p, const std::string& shown_as) {
  return {shown_as, sha256_hex(read_text_file(p))};
}

std::string RunManifest::to_json() const {
  auto files = [](const std::vector<FileDigest>& list) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& f : list) a.push_back({{"path", f.path}, {"sha256", f.sha256}});
    return a;
  };
  nlohmann::ordered_json o;
  o["subcommand"] = subcommand;
  o["arguments"] = arguments;
  o["inputs"] = files(inputs);
  o["outputs"] = files(outputs);
  o["tool_version"] = tool_version;
  return o.dump(2) + "\n";
}

}  // namespace fbar
