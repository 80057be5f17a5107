#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "hproj/rational.hpp"

namespace hproj {

// Environment variable naming a directory for the persistent H cache.
inline constexpr const char* kCacheDirEnv = "HPROJ_CACHE_DIR";

// Thread-safe memo of H(n). Optionally backed by a text file with lines
// "n,num,den"; entries computed here are appended on flush().
class HurwitzCache {
 public:
  HurwitzCache() = default;
  explicit HurwitzCache(std::filesystem::path file);
  ~HurwitzCache();

  HurwitzCache(const HurwitzCache&) = delete;
  HurwitzCache& operator=(const HurwitzCache&) = delete;

  // Memory-only unless HPROJ_CACHE_DIR is set.
  static HurwitzCache from_environment();

  Rational get(std::uint64_t n);
  double get_double(std::uint64_t n) { return get(n).to_double(); }
  std::optional<Rational> find(std::uint64_t n) const;
  void insert(std::uint64_t n, const Rational& v);

  // Computes all missing values with up to `threads` workers.
  void prefetch(std::span<const std::uint64_t> ns, unsigned threads);

  void flush();
  std::size_t size() const;
  const std::optional<std::filesystem::path>& file() const { return file_; }

 private:
  void load();

  mutable std::shared_mutex mu_;
  std::unordered_map<std::uint64_t, Rational> values_;
  std::vector<std::uint64_t> pending_;
  std::optional<std::filesystem::path> file_;
};

// Process-wide cache used when no cache is passed explicitly.
HurwitzCache& hurwitz_cache();

}  // namespace hproj
