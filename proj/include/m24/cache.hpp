#pragma once

#include <functional>
#include <optional>
#include <string>

namespace m24 {

std::string sha256_hex(const std::string& bytes);
std::string read_file(const std::string& path);

// Disk-backed memo. The directory comes from M24_CACHE_DIR; when unset the cache is
// disabled and the producer always runs.
class Cache {
 public:
  explicit Cache(std::optional<std::string> dir);
  static Cache from_env();

  bool enabled() const { return dir_.has_value(); }
  const std::optional<std::string>& dir() const { return dir_; }

  // Returns the stored value for key, or runs producer once (per key, across
  // processes) and stores its result. Corrupt entries are discarded.
  std::string get_or_compute(const std::string& key, const std::function<std::string()>& producer,
                             bool* hit = nullptr);

 private:
  std::string path_for(const std::string& key) const;
  std::optional<std::string> dir_;
};

}  // namespace m24
