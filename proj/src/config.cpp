#include "slag/config.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

namespace slag {

void RunConfig::load_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DomainError("cannot open config file " + path);
  std::string line;
  while (std::getline(is, line)) {
    size_t h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
}

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : std::stod(it->second);
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : std::stoi(it->second);
}

double RunConfig::require_positive(const std::string& key, double fallback) const {
  double v = get_double(key, fallback);
  if (!(v > 0)) throw DomainError("config field '" + key + "' must be positive");
  return v;
}

int RunConfig::require_min(const std::string& key, int fallback, int min) const {
  int v = get_int(key, fallback);
  if (v < min)
    throw DomainError("config field '" + key + "' must be at least " + std::to_string(min));
  return v;
}

std::string RunConfig::hash() const {
  uint64_t h = 1469598103934665603ull;
  auto feed = [&](const std::string& s) {
    for (char c : s) {
      h ^= (unsigned char)c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [k, v] : kv) {  // std::map iterates sorted
    feed(k);
    feed("=");
    feed(v);
    feed("\n");
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

}  // namespace slag
