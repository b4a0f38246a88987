#include "m24/cache.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace m24 {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Cache::Cache(std::optional<std::string> dir) : dir_(std::move(dir)) {
  if (dir_) fs::create_directories(*dir_);
}

Cache Cache::from_env() {
  const char* d = std::getenv("M24_CACHE_DIR");
  if (!d || !*d) return Cache(std::nullopt);
  return Cache(std::string(d));
}

std::string Cache::path_for(const std::string& key) const { return *dir_ + "/" + sha256_hex(key); }

namespace {

// Entry layout: "m24cache1\n" <sha256 of payload> "\n" <payload>.
const std::string kMagic = "m24cache1\n";

std::optional<std::string> read_entry(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  std::string s = os.str();
  if (s.compare(0, kMagic.size(), kMagic) != 0) return std::nullopt;
  size_t nl = s.find('\n', kMagic.size());
  if (nl == std::string::npos) return std::nullopt;
  std::string digest = s.substr(kMagic.size(), nl - kMagic.size());
  std::string payload = s.substr(nl + 1);
  if (sha256_hex(payload) != digest) return std::nullopt;
  return payload;
}

void write_entry(const std::string& path, const std::string& payload) {
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << kMagic << sha256_hex(payload) << "\n" << payload;
    if (!out) throw std::runtime_error("cannot write cache entry " + tmp);
  }
  fs::rename(tmp, path);
}

struct FileLock {
  int fd = -1;
  explicit FileLock(const std::string& path) {
    fd = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd < 0) throw std::runtime_error("cannot open lock " + path);
    ::flock(fd, LOCK_EX);
  }
  ~FileLock() {
    if (fd >= 0) {
      ::flock(fd, LOCK_UN);
      ::close(fd);
    }
  }
};

}  // namespace

std::string Cache::get_or_compute(const std::string& key, const std::function<std::string()>& producer, bool* hit) {
  if (hit) *hit = false;
  if (!dir_) return producer();
  std::string path = path_for(key);
  if (auto v = read_entry(path)) {
    if (hit) *hit = true;
    return *v;
  }
  FileLock lock(path + ".lock");
  if (auto v = read_entry(path)) {
    if (hit) *hit = true;
    return *v;
  }
  std::string value = producer();
  write_entry(path, value);
  return value;
}

}  // namespace m24
