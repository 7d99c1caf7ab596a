#include "bandlim/config.hpp"

#include <fstream>
#include <sstream>

#include "bandlim/errors.hpp"

namespace bandlim {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    size_t pos;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': '" + text + "' is not a number");
  }
}

int parse_int(const std::string& key, const std::string& text) {
  try {
    size_t pos;
    const int v = std::stoi(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': '" + text + "' is not an integer");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in, path);
}

Config Config::parse(std::istream& in, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (cfg.values_.count(key))
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    cfg.values_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

void Config::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

std::string Config::require(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    throw ConfigError("missing required key '" + key + "'" +
                      (origin_.empty() ? "" : " in " + origin_));
  return it->second;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
  return parse_double(key, require(key));
}

double Config::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_double(key, it->second);
}

int Config::get_int(const std::string& key) const {
  return parse_int(key, require(key));
}

int Config::get_int(const std::string& key, int fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_int(key, it->second);
}

std::vector<int> Config::get_int_list(const std::string& key) const {
  std::vector<int> out;
  auto it = values_.find(key);
  if (it == values_.end() || trim(it->second).empty()) return out;
  for (const std::string& part : split(it->second, ','))
    out.push_back(parse_int(key, trim(part)));
  return out;
}

Signal Config::get_signal(const std::string& key, double omega) const {
  Signal f;
  f.omega = omega;
  const std::string text = require(key);
  for (const std::string& part : split(text, ',')) {
    const std::vector<std::string> wa = split(trim(part), '@');
    if (wa.size() != 2)
      throw ConfigError("key '" + key + "': term '" + trim(part) +
                        "' is not weight@shift");
    f.terms.push_back(
        {parse_double(key, trim(wa[0])), parse_double(key, trim(wa[1]))});
  }
  return f;
}

}  // namespace bandlim
