#pragma once

#include <map>
#include <string>
#include <vector>

#include "bandlim/core.hpp"

namespace bandlim {

// Flat key=value file with '#' comments. Values stay as text until a typed
// accessor parses them; parse failures name the key and, on load, the line.
class Config {
 public:
  static Config load(const std::string& path);
  static Config parse(std::istream& in, const std::string& origin);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  // Comma-separated integers, e.g. "-7,-2,3,11". Empty value -> empty list.
  std::vector<int> get_int_list(const std::string& key) const;
  // Comma-separated weight@shift terms, e.g. "1@0, -0.5@2.25".
  Signal get_signal(const std::string& key, double omega) const;

 private:
  std::string require(const std::string& key) const;
  std::map<std::string, std::string> values_;
  std::string origin_;
};

}  // namespace bandlim
