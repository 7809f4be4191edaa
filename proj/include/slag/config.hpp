#pragma once

#include "slag/types.hpp"

#include <map>
#include <string>

namespace slag {

// Flat key-value run configuration: values from a config file are overlaid
// by command-line settings; reports embed the canonical hash.
struct RunConfig {
  std::map<std::string, std::string> kv;

  void load_file(const std::string& path);
  void set(const std::string& key, const std::string& value) { kv[key] = value; }
  bool has(const std::string& key) const { return kv.count(key) > 0; }

  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;

  // validation helpers: throw DomainError naming the offending field
  double require_positive(const std::string& key, double fallback) const;
  int require_min(const std::string& key, int fallback, int min) const;

  // FNV-1a over the sorted canonical "key=value" lines
  std::string hash() const;
};

inline constexpr const char* kVersion = "0.1.0";

}  // namespace slag
