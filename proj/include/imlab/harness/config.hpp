#pragma once

// Flat key=value configuration with dotted keys:
//
//   # comment
//   experiment = acl
//   grid.n = 32
//   sweep.N = 2, 4, 8, 16
//   seeds = 1:5            (inclusive range; lists may mix ranges and values)
//
// Every key must be consumed by the experiment that reads it; leftovers are
// reported as configuration errors.

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace imlab::harness {

class Config {
 public:
  static Config parse(std::string_view text, const std::string& source = "<string>");
  static Config load(const std::filesystem::path& path);

  /// Applies `key=value` (used by --override).
  void set_override(std::string_view assignment);
  void set(const std::string& key, const std::string& value) { entries_[key] = value; }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<std::uint64_t> get_seeds(const std::string& key, const std::vector<std::uint64_t>& fallback) const;

  /// Keys present but never read.
  std::vector<std::string> unused_keys() const;

  /// Sorted `key=value` lines; the hashed representation.
  std::string canonical() const;
  /// FNV-1a 64 of canonical(), as 16 hex digits.
  std::string hash_hex() const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  const std::string* lookup(const std::string& key) const;

  std::map<std::string, std::string> entries_;
  mutable std::set<std::string> used_;
};

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace imlab::harness
