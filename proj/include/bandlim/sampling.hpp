#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bandlim/core.hpp"
#include "bandlim/derivative_frames.hpp"

namespace bandlim {

// Multi-channel samples on the lattice n*t0 for n in [n_min, n_max].
// Channel j holds sqrt(2 pi) * (-1)^(j-1) * f^(j-1)(n t0); a set missing
// flag masks an entry whose value is then meaningless.
struct SampleSet {
  FrameParams params;
  int channels = 0;
  int n_min = 0, n_max = 0;
  std::vector<double> values;    // channel-major dense storage
  std::vector<std::uint8_t> missing;

  int width() const { return n_max - n_min + 1; }
  int count() const { return channels * width(); }
  int index_of(int j, int n) const;
  double value(int j, int n) const { return values[index_of(j, n)]; }
  bool is_missing(int j, int n) const { return missing[index_of(j, n)] != 0; }
  void set_value(int j, int n, double v) { values[index_of(j, n)] = v; }
  void set_missing(int j, int n, bool m) { missing[index_of(j, n)] = m ? 1 : 0; }
  bool any_missing() const;
};

// Evaluates the signal's derivative channels over the lattice window.
SampleSet take_samples(const Signal& f, const FrameParams& p, int channels,
                       int n_min, int n_max);

// Masks the given lattice indices on channels 1..lambda.
void mask_samples(SampleSet& s, const std::vector<int>& indices, int lambda);

// Series reconstruction at x: sum over lattice points (ordered by |n|, then n,
// so the truncation is symmetric and the summation order deterministic) and
// channels of value * dual_time(x - n t0). Throws SampleConsistencyError if
// any entry is masked.
double reconstruct(const SampleSet& s, const DualSet& duals, double x);

struct ReconMetrics {
  double sup_err = 0.0;
  double rms_err = 0.0;
  std::string dual_path;
};

// Sup and RMS error of the reconstruction against the true signal on a
// uniform grid of grid_points over [lo, hi].
ReconMetrics reconstruction_error(const Signal& f, const SampleSet& s,
                                  const DualSet& duals, double lo, double hi,
                                  int grid_points);

}  // namespace bandlim
