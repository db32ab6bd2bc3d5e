#pragma once

// Plain-text experiment configuration: "[section]" headers with
// "key = value" entries, '#' comments, whitespace-insensitive.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgq {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;

  const std::string& get(const std::string& section,
                         const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;

  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  long get_long(const std::string& section, const std::string& key) const;
  long get_long_or(const std::string& section, const std::string& key,
                   long fallback) const;
  bool get_bool_or(const std::string& section, const std::string& key,
                   bool fallback) const;

  /// True when the key is present with the literal value "auto".
  bool is_auto(const std::string& section, const std::string& key) const;

  /// Comma-separated list of numbers; empty list when the key is absent.
  std::vector<double> get_list(const std::string& section,
                               const std::string& key) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace sgq
