#pragma once

#include "imlab/spectral_field.hpp"

namespace imlab::spectral {

/// Quintic smoothstep: 0 at x ≤ 0, 1 at x ≥ 1, first and second derivatives vanish at both ends.
double smoothstep5(double x);

/// Radial cutoff profile η(ρ) of the I-operator:
///   1 for ρ ≤ 1,  ρ^{-(1-s)} for ρ ≥ 2,  ρ^{-(1-s)·θ(log₂ρ)} in between (θ = smoothstep5).
double eta(double rho, double s);

enum class MultiplierKind {
  fractional_power,  ///< |ξ|^σ  (D^σ)
  i_operator,        ///< η(|ξ|/N)
  sharp_low,         ///< 1_{|ξ| ≤ N}
  sharp_high,        ///< 1_{|ξ| > N}
  eta_only,          ///< |ξ|^{1-s} η(|ξ|/N) / N^{1-s}: the symbol of D^{1-s}I normalized by N^{1-s}
};

/// Radial Fourier symbol applied diagonally in frequency.
struct MultiplierSpec {
  MultiplierKind kind = MultiplierKind::fractional_power;
  double sigma = 0.0;
  double N = 1.0;
  double s = 1.0;

  static MultiplierSpec fractional_power(double sigma) { return {MultiplierKind::fractional_power, sigma, 1.0, 1.0}; }
  static MultiplierSpec i_operator(double N, double s) { return {MultiplierKind::i_operator, 0.0, N, s}; }
  static MultiplierSpec sharp_low(double N) { return {MultiplierKind::sharp_low, 0.0, N, 1.0}; }
  static MultiplierSpec sharp_high(double N) { return {MultiplierKind::sharp_high, 0.0, N, 1.0}; }
  static MultiplierSpec eta_only(double N, double s) { return {MultiplierKind::eta_only, 0.0, N, s}; }

  /// Symbol at |ξ| = kabs (> 0).
  double symbol(double kabs) const;
};

/// Multiplies every coefficient by the symbol at |k|. The zero mode is skipped
/// (it is 0 by construction); a nonzero zero mode under a negative power throws.
SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& m);

}  // namespace imlab::spectral
