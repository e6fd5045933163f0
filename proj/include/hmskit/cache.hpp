#pragma once

// Content-addressed store for computed tables. The key is the SHA-256 of
// the canonical (key-sorted, compact) JSON of the request.

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>

#include <json.hpp>

#include "hmskit/error.hpp"

namespace hmskit {

inline std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorKind::resource, "SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::string key(const nlohmann::json& request) { return sha256_hex(request.dump()); }

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const std::string& key) const { return dir_ / (key + ".json"); }

  std::optional<nlohmann::json> get(const std::string& key) const {
    std::ifstream in(path_for(key));
    if (!in) return std::nullopt;
    try {
      return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception&) {
      return std::nullopt;  // unreadable entries are recomputed
    }
  }

  /// Writes through a temporary file so readers never see partial entries.
  void put(const std::string& key, const nlohmann::json& value) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) fail(ErrorKind::resource, "cannot create cache directory " + dir_.string() + ": " + ec.message());
    const auto final_path = path_for(key);
    auto tmp = final_path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) fail(ErrorKind::resource, "cannot write cache entry " + tmp.string());
      out << value.dump() << '\n';
    }
    std::filesystem::rename(tmp, final_path, ec);
    if (ec) fail(ErrorKind::resource, "cannot store cache entry: " + ec.message());
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace hmskit
