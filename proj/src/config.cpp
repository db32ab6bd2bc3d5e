#include "sgquad/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sgq {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

Config Config::parse_text(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": empty section name");
      cfg.sections_[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

const std::string& Config::get(const std::string& section,
                               const std::string& key) const {
  auto it = sections_.find(section);
  if (it != sections_.end()) {
    auto jt = it->second.find(key);
    if (jt != it->second.end()) return jt->second;
  }
  throw ConfigError("missing config key [" + section + "] " + key);
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

namespace {

double to_double(const std::string& section, const std::string& key,
                 const std::string& v) {
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError("config key [" + section + "] " + key +
                      ": not a number: '" + v + "'");
  return x;
}

}  // namespace

double Config::get_double(const std::string& section,
                          const std::string& key) const {
  return to_double(section, key, get(section, key));
}

double Config::get_double_or(const std::string& section,
                             const std::string& key, double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

long Config::get_long(const std::string& section,
                      const std::string& key) const {
  double x = get_double(section, key);
  long n = static_cast<long>(x);
  if (static_cast<double>(n) != x)
    throw ConfigError("config key [" + section + "] " + key +
                      ": expected an integer");
  return n;
}

long Config::get_long_or(const std::string& section, const std::string& key,
                         long fallback) const {
  return has(section, key) ? get_long(section, key) : fallback;
}

bool Config::get_bool_or(const std::string& section, const std::string& key,
                         bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string& v = get(section, key);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError("config key [" + section + "] " + key +
                    ": expected a boolean, got '" + v + "'");
}

bool Config::is_auto(const std::string& section, const std::string& key) const {
  return has(section, key) && get(section, key) == "auto";
}

std::vector<double> Config::get_list(const std::string& section,
                                     const std::string& key) const {
  std::vector<double> out;
  if (!has(section, key)) return out;
  std::istringstream in(get(section, key));
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(to_double(section, key, item));
  }
  return out;
}

}  // namespace sgq
