#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gammalab {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// Line-oriented `[section]` / `key = value` config.  `#` starts a comment.
// Keys are looked up as "section.key"; the pre-section area is "".
class Config {
 public:
  Config() = default;

  static Config parse(const std::string& text);
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double get(const std::string& key, double fallback) const;
  long get(const std::string& key, long fallback) const;
  std::uint64_t get(const std::string& key, std::uint64_t fallback) const;
  // Comma-separated list of doubles.
  std::vector<double> get_list(const std::string& key,
                               const std::vector<double>& fallback) const;

  void set(const std::string& key, const std::string& value);

  const std::map<std::string, std::string>& entries() const { return kv_; }

  // FNV-1a over the canonical "key=value\n" listing, hex string.
  std::string hash() const;

 private:
  std::map<std::string, std::string> kv_;
  std::map<std::string, int> lines_;
};

}  // namespace gammalab
