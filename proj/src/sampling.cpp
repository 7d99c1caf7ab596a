#include "bandlim/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "bandlim/errors.hpp"

namespace bandlim {

int SampleSet::index_of(int j, int n) const {
  if (j < 1 || j > channels || n < n_min || n > n_max)
    throw DomainError("sample (" + std::to_string(j) + ", " + std::to_string(n) +
                      ") outside the stored window");
  return (j - 1) * width() + (n - n_min);
}

bool SampleSet::any_missing() const {
  for (std::uint8_t m : missing)
    if (m) return true;
  return false;
}

SampleSet take_samples(const Signal& f, const FrameParams& p, int channels,
                       int n_min, int n_max) {
  if (channels < 1 || channels > 9)
    throw ConfigError("channel count must be 1..9 (derivative orders 0..8)");
  if (n_max < n_min) throw ConfigError("empty sample window");
  SampleSet s;
  s.params = p;
  s.channels = channels;
  s.n_min = n_min;
  s.n_max = n_max;
  s.values.assign(static_cast<size_t>(s.count()), 0.0);
  s.missing.assign(static_cast<size_t>(s.count()), 0);
  const double root = std::sqrt(2.0 * M_PI);
  for (int j = 1; j <= channels; ++j) {
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    for (int n = n_min; n <= n_max; ++n)
      s.set_value(j, n, root * sign * eval_signal(f, n * p.t0, j - 1));
  }
  return s;
}

void mask_samples(SampleSet& s, const std::vector<int>& indices, int lambda) {
  if (lambda < 1 || lambda > s.channels)
    throw ConfigError("lambda must be in 1.." + std::to_string(s.channels));
  for (int n : indices) {
    if (n < s.n_min || n > s.n_max)
      throw SampleConsistencyError("missing index " + std::to_string(n) +
                                   " outside the sample window");
    for (int j = 1; j <= lambda; ++j) {
      s.set_value(j, n, 0.0);
      s.set_missing(j, n, true);
    }
  }
}

namespace {

std::vector<int> ordered_lattice(int n_min, int n_max) {
  std::vector<int> ns;
  ns.reserve(n_max - n_min + 1);
  for (int n = n_min; n <= n_max; ++n) ns.push_back(n);
  std::sort(ns.begin(), ns.end(), [](int a, int b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
  });
  return ns;
}

}  // namespace

double reconstruct(const SampleSet& s, const DualSet& duals, double x) {
  if (s.any_missing())
    throw SampleConsistencyError(
        "sample set has masked entries; recover them before reconstructing");
  if (s.channels != duals.params.length)
    throw ConfigError("sample channels do not match the dual system");
  double sum = 0.0;
  for (int n : ordered_lattice(s.n_min, s.n_max)) {
    const double y = x - n * s.params.t0;
    for (int j = 1; j <= s.channels; ++j)
      sum += s.value(j, n) * duals.time_value(j, y);
  }
  return sum;
}

ReconMetrics reconstruction_error(const Signal& f, const SampleSet& s,
                                  const DualSet& duals, double lo, double hi,
                                  int grid_points) {
  if (grid_points < 2) throw ConfigError("error grid needs at least 2 points");
  ReconMetrics m;
  m.dual_path = duals.path_name();
  double sq = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double x = lo + i * (hi - lo) / (grid_points - 1);
    const double err = std::abs(reconstruct(s, duals, x) - eval_signal(f, x, 0));
    m.sup_err = std::max(m.sup_err, err);
    sq += err * err;
  }
  m.rms_err = std::sqrt(sq / grid_points);
  return m;
}

}  // namespace bandlim
