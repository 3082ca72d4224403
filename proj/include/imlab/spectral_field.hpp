#pragma once

// Real scalar fields stored as Fourier coefficients on a periodic grid.
//
// Normalization: u(x) = Σ_k c_k e^{ik·x}, so the forward transform carries
// the 1/n^dim factor and ∫_box |u|² dx = L^dim Σ_k |c_k|².

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "imlab/grid.hpp"

namespace imlab::spectral {

using cplx = std::complex<double>;

class SpectralField {
 public:
  explicit SpectralField(Grid grid);
  /// Zero mode and Nyquist-plane coefficients are forced to 0.
  SpectralField(Grid grid, std::vector<cplx> coeffs);

  /// Real mode A·cos(k·x + phase) for the signed mode vector `modes`.
  static SpectralField cosine_mode(const Grid& grid, const std::array<int, 3>& modes, double amplitude,
                                   double phase = 0.0);

  const Grid& grid() const { return grid_; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  const cplx& operator[](std::size_t flat) const { return coeffs_[flat]; }

  /// Max |c(-k) - conj(c(k))|.
  double hermitian_defect() const;
  bool is_zero() const;
  bool all_finite() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double a);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double a, SpectralField f) { return f *= a; }
  friend SpectralField operator*(SpectralField f, double a) { return f *= a; }

  /// Coefficient-wise y ← y + a·x.
  SpectralField& axpy(double a, const SpectralField& x);

 private:
  void enforce_band();
  void require_same_grid(const SpectralField& other) const;

  Grid grid_;
  std::vector<cplx> coeffs_;
};

/// A field and its time derivative at time t.
struct WaveState {
  SpectralField u;
  SpectralField v;
  double t = 0.0;

  WaveState(SpectralField u_, SpectralField v_, double t_ = 0.0);
  static WaveState zero(const Grid& grid, double t = 0.0);
  const Grid& grid() const { return u.grid(); }
};

/// Samples on the grid refined by `oversample` (row-major, physical positions jL/(n·oversample)).
std::vector<double> to_physical(const SpectralField& f, int oversample = 1);

/// Forward transform of samples taken on `grid` refined by `oversample`,
/// truncated to the band of `grid` and made exactly Hermitian.
SpectralField from_physical(std::span<const double> samples, const Grid& grid, int oversample = 1);

/// (L^dim Σ_{k≠0} |k|^{2σ}|c_k|²)^{1/2}.
double sobolev_norm(const SpectralField& f, double sigma);

/// ‖(u, v)‖ in Ḣ^σ × Ḣ^{σ-1}.
double pair_norm(const SpectralField& u, const SpectralField& v, double sigma);
double pair_norm(const WaveState& w, double sigma);

/// (L^dim/M Σ_j |u(x_j)|^r)^{1/r} over the M points of the `oversample`-refined grid;
/// the sample maximum for r = ∞.
double lebesgue_norm(const SpectralField& f, double r, int oversample = 1);

/// Same quadrature for samples already in physical space.
double lebesgue_norm_samples(std::span<const double> samples, double volume, double r);

/// Sharp split into |k| ≤ N and |k| > N; low + high reproduces f exactly.
std::pair<SpectralField, SpectralField> frequency_split(const SpectralField& f, double N);

/// Real L² inner product ∫ f g dx.
double inner_product(const SpectralField& f, const SpectralField& g);

}  // namespace imlab::spectral
