#include "bandlim/csv.hpp"

#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "bandlim/errors.hpp"

namespace bandlim {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << '\n';
}

void write_samples(std::ostream& out, const SampleSet& s) {
  write_csv_row(out, {"channel", "n", "value", "missing"});
  for (int j = 1; j <= s.channels; ++j)
    for (int n = s.n_min; n <= s.n_max; ++n)
      write_csv_row(out, {std::to_string(j), std::to_string(n),
                          format_double(s.value(j, n)),
                          s.is_missing(j, n) ? "1" : "0"});
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

SampleSet read_samples(std::istream& in, const FrameParams& p) {
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw ConfigError("sample file is empty");
  ++lineno;
  if (split_fields(line) != std::vector<std::string>{"channel", "n", "value", "missing"})
    throw ConfigError("line 1: expected header channel,n,value,missing");

  struct Cell {
    double value;
    bool missing;
  };
  std::map<std::pair<int, int>, Cell> cells;
  int channels = 0, n_min = 0, n_max = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 4)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 4 fields");
    int j, n, miss;
    double v;
    try {
      size_t pos;
      j = std::stoi(f[0], &pos);
      if (pos != f[0].size()) throw std::invalid_argument("");
      n = std::stoi(f[1], &pos);
      if (pos != f[1].size()) throw std::invalid_argument("");
      v = std::stod(f[2], &pos);
      if (pos != f[2].size()) throw std::invalid_argument("");
      miss = std::stoi(f[3], &pos);
      if (pos != f[3].size() || (miss != 0 && miss != 1))
        throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ConfigError("line " + std::to_string(lineno) + ": malformed row");
    }
    if (!cells.emplace(std::make_pair(j, n), Cell{v, miss == 1}).second)
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate cell");
    if (!any) {
      n_min = n_max = n;
      any = true;
    } else {
      n_min = std::min(n_min, n);
      n_max = std::max(n_max, n);
    }
    channels = std::max(channels, j);
  }
  if (!any) throw ConfigError("sample file has no data rows");

  SampleSet s;
  s.params = p;
  s.channels = channels;
  s.n_min = n_min;
  s.n_max = n_max;
  const int width = n_max - n_min + 1;
  s.values.assign(static_cast<size_t>(channels) * width, 0.0);
  s.missing.assign(static_cast<size_t>(channels) * width, false);
  for (int j = 1; j <= channels; ++j)
    for (int n = n_min; n <= n_max; ++n) {
      auto it = cells.find({j, n});
      if (it == cells.end())
        throw ConfigError("missing cell for channel " + std::to_string(j) +
                          ", n = " + std::to_string(n));
      s.set_value(j, n, it->second.value);
      s.set_missing(j, n, it->second.missing);
    }
  return s;
}

}  // namespace bandlim
