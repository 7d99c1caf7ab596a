#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bandlim/sampling.hpp"

namespace bandlim {

// Shortest round-trip style decimal with 17 significant digits, '.' decimal
// point regardless of locale.
std::string format_double(double v);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Sample table with columns channel,n,value,missing. Rows ordered by channel
// then n, so identical sets serialize byte-identically.
void write_samples(std::ostream& out, const SampleSet& s);

// Inverse of write_samples. The file must cover a full channels x window
// grid; gaps, duplicates or a malformed row raise ConfigError with the line
// number.
SampleSet read_samples(std::istream& in, const FrameParams& p);

}  // namespace bandlim
