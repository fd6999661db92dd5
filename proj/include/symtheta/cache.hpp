#pragma once

// On-disk cache for the generator structure-constant tables of the
// symmetric-power rings.  One file per (genus, power); the payload is the
// deterministic complete table, prefixed by a format version and an FNV-1a
// checksum so stale or damaged files are detected and silently recomputed.
// Writes go through a temporary file and an atomic rename.

#include "symtheta/sym_power.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <unistd.h>

namespace symtheta {

struct CacheConfig {
  bool enabled = true;
  std::string dir_override;  // empty: resolve from the environment
};

inline constexpr const char* kCacheEnvVar = "SYMTHETA_CACHE_DIR";
inline constexpr const char* kCacheFormatTag = "symtheta-gen-table v1";

/// Directory the cache lives in: the override, else $SYMTHETA_CACHE_DIR,
/// else $XDG_CACHE_HOME/symtheta, else $HOME/.cache/symtheta.  Empty when
/// no candidate exists (caching is then skipped).
inline std::optional<std::filesystem::path> cache_dir(const CacheConfig& cfg) {
  if (!cfg.enabled) return std::nullopt;
  if (!cfg.dir_override.empty()) return std::filesystem::path(cfg.dir_override);
  if (const char* env = std::getenv(kCacheEnvVar); env && *env)
    return std::filesystem::path(env);
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::filesystem::path(xdg) / "symtheta";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "symtheta";
  return std::nullopt;
}

namespace detail {

inline uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string cache_file_name(const SymRing& r) {
  return "gentable-v1-g" + std::to_string(r.genus()) + "-d" + std::to_string(r.power()) +
         ".txt";
}

}  // namespace detail

/// Tries to warm the ring's generator table from disk.  Returns true only
/// when a well-formed, checksum-clean, matching file was loaded; any
/// anomaly leaves the ring untouched.
inline bool load_generator_table(const SymRing& ring, const CacheConfig& cfg) {
  auto dir = cache_dir(cfg);
  if (!dir) return false;
  std::ifstream in(*dir / detail::cache_file_name(ring), std::ios::binary);
  if (!in) return false;
  std::string tag, checksum_line;
  if (!std::getline(in, tag) || tag != kCacheFormatTag) return false;
  if (!std::getline(in, checksum_line)) return false;
  std::istringstream cs(checksum_line);
  std::string word;
  uint64_t want = 0;
  if (!(cs >> word >> std::hex >> want) || word != "checksum") return false;
  std::ostringstream rest;
  rest << in.rdbuf();
  std::string payload = rest.str();
  if (detail::fnv1a64(payload) != want) return false;
  return ring.load_table_payload(payload);
}

/// Fills the ring's table deterministically and writes it to the cache via
/// a temporary file and rename.  Failures are silent: the cache is an
/// optimization, never a correctness dependency.
inline void store_generator_table(const SymRing& ring, const CacheConfig& cfg) {
  auto dir = cache_dir(cfg);
  if (!dir) return;
  std::error_code ec;
  std::filesystem::create_directories(*dir, ec);
  if (ec) return;
  std::string payload = ring.table_payload();
  std::ostringstream head;
  head << kCacheFormatTag << "\n"
       << "checksum " << std::hex << detail::fnv1a64(payload) << "\n";
  std::filesystem::path final_path = *dir / detail::cache_file_name(ring);
  std::filesystem::path tmp_path =
      *dir / (detail::cache_file_name(ring) + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out << head.str() << payload;
    if (!out) {
      out.close();
      std::filesystem::remove(tmp_path, ec);
      return;
    }
  }
  std::filesystem::rename(tmp_path, final_path, ec);
  if (ec) std::filesystem::remove(tmp_path, ec);
}

}  // namespace symtheta
