#pragma once

// Binary snapshot layout (all little-endian):
//   int64 dim, int64 n, float64 L, float64 t,
//   then n^dim pairs (float64 re, float64 im) in row-major FFT wavenumber order.
// A WaveState is two consecutive records: u then v.

#include <filesystem>
#include <iosfwd>
#include <utility>

#include "imlab/spectral_field.hpp"

namespace imlab::spectral {

void write_field(std::ostream& os, const SpectralField& f, double t);
std::pair<SpectralField, double> read_field(std::istream& is);

void write_state(std::ostream& os, const WaveState& w);
WaveState read_state(std::istream& is);

void save_state(const std::filesystem::path& path, const WaveState& w);
WaveState load_state(const std::filesystem::path& path);

/// CSV with header `k_shell,shell_energy`: shell j collects modes with
/// round(|k|/(2π/L)) = j; energy is L^dim Σ |c_k|² over the shell.
void write_spectrum_csv(std::ostream& os, const SpectralField& f);

}  // namespace imlab::spectral
