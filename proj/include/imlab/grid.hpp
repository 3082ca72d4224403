#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace imlab::spectral {

/// Uniform periodic grid on the box [0, L)^dim with n points per axis.
///
/// Wavenumbers are (2π/L)·m with integer m ∈ [-n/2, n/2). The Nyquist plane
/// m_i = -n/2 is outside the band: coefficients there are always zero, so
/// every in-band mode has a partner -m in band and fields stay real.
/// Flat indices are row-major over the FFT ordering of each axis.
class Grid {
 public:
  /// dim ∈ {1, 3}; n a power of two, n ≥ 16 (n ≥ 4 with `allow_small`); L > 0.
  Grid(int dim, int n, double length, bool allow_small = false);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double length() const { return length_; }
  std::size_t size() const { return size_; }
  double volume() const;
  double fundamental() const;  ///< 2π/L
  double nyquist() const;      ///< πn/L

  /// Signed mode number of an FFT-ordered axis index.
  int signed_mode(int axis_index) const { return axis_index < n_ / 2 ? axis_index : axis_index - n_; }
  /// Signed mode vector; unused trailing components are 0 in 1D.
  std::array<int, 3> modes(std::size_t flat) const;
  /// Flat index of a signed mode vector (components wrapped into [0, n)).
  std::size_t flat_index(const std::array<int, 3>& modes) const;
  /// Flat index of -k.
  std::size_t negated(std::size_t flat) const;

  /// |k| for every flat index.
  const std::vector<double>& wavenumber_magnitudes() const { return *kmag_; }
  double kmag(std::size_t flat) const { return (*kmag_)[flat]; }
  /// False on the Nyquist planes.
  bool in_band(std::size_t flat) const { return (*band_)[flat] != 0; }

  /// Same box, n·factor points per axis.
  Grid refined(int factor) const;
  /// Box scaled by λ, same n.
  Grid stretched(double lambda) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  int dim_;
  int n_;
  double length_;
  std::size_t size_;
  std::shared_ptr<const std::vector<double>> kmag_;
  std::shared_ptr<const std::vector<unsigned char>> band_;
};

}  // namespace imlab::spectral
