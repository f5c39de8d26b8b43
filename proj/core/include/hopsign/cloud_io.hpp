#pragma once

// CSV serialisation of spectrum clouds. One point per row,
//   re,im,N,word_id,alpha_re,alpha_im
// preceded by '#' metadata lines (artifact version, sigma, seed, params).
// Doubles are written with 17 significant digits, so a write/read round
// trip is exact and equal clouds give identical bytes.

#include <iosfwd>
#include <string>

#include "hopsign/spectra.hpp"

namespace hopsign {

/// Version string written into every CSV and SVG header.
const char* artifact_version() noexcept;

void write_csv(std::ostream& out, const SpectrumCloud& cloud);
void write_csv(const std::string& path, const SpectrumCloud& cloud);

SpectrumCloud read_csv(std::istream& in);
SpectrumCloud read_csv(const std::string& path);

}  // namespace hopsign
