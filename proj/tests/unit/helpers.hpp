#pragma once

#include <random>

#include "imlab/spectral_field.hpp"

namespace testutil {

using imlab::spectral::Grid;
using imlab::spectral::SpectralField;

/// Real random field: uniform samples in physical space, then projected onto the band.
inline SpectralField random_field(const Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> x(g.size());
  for (auto& v : x) v = nd(rng);
  return imlab::spectral::from_physical(x, g);
}

/// Random field restricted to |k| ≤ kmax.
inline SpectralField random_lowpass(const Grid& g, unsigned seed, double kmax) {
  return imlab::spectral::frequency_split(random_field(g, seed), kmax).first;
}

inline double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const SpectralField& a) {
  double m = 0.0;
  for (const auto& c : a.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace testutil
