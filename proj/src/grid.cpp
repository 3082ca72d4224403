#include "imlab/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "imlab/errors.hpp"

namespace imlab::spectral {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int dim, int n, double length, bool allow_small) : dim_(dim), n_(n), length_(length) {
  if (dim != 1 && dim != 3) throw PreconditionError("Grid: dim must be 1 or 3");
  if (!is_power_of_two(n) || n < (allow_small ? 4 : 16)) {
    std::ostringstream os;
    os << "Grid: n = " << n << " must be a power of two >= " << (allow_small ? 4 : 16);
    throw PreconditionError(os.str());
  }
  if (!(length > 0.0) || !std::isfinite(length)) throw PreconditionError("Grid: L must be positive");
  size_ = dim == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n * n;

  auto kmag = std::make_shared<std::vector<double>>(size_);
  auto band = std::make_shared<std::vector<unsigned char>>(size_);
  const double dk = fundamental();
  for (std::size_t i = 0; i < size_; ++i) {
    const auto m = modes(i);
    const double m2 = double(m[0]) * m[0] + double(m[1]) * m[1] + double(m[2]) * m[2];
    (*kmag)[i] = dk * std::sqrt(m2);
    bool inside = true;
    for (int a = 0; a < dim_; ++a) inside = inside && m[a] != -n_ / 2;
    (*band)[i] = inside ? 1 : 0;
  }
  kmag_ = std::move(kmag);
  band_ = std::move(band);
}

double Grid::volume() const { return std::pow(length_, dim_); }

double Grid::fundamental() const { return 2.0 * std::numbers::pi / length_; }

double Grid::nyquist() const { return std::numbers::pi * n_ / length_; }

std::array<int, 3> Grid::modes(std::size_t flat) const {
  const auto n = static_cast<std::size_t>(n_);
  if (dim_ == 1) return {signed_mode(static_cast<int>(flat)), 0, 0};
  const int i2 = static_cast<int>(flat % n);
  const int i1 = static_cast<int>((flat / n) % n);
  const int i0 = static_cast<int>(flat / (n * n));
  return {signed_mode(i0), signed_mode(i1), signed_mode(i2)};
}

std::size_t Grid::flat_index(const std::array<int, 3>& m) const {
  auto wrap = [this](int k) { return static_cast<std::size_t>(((k % n_) + n_) % n_); };
  if (dim_ == 1) return wrap(m[0]);
  const auto n = static_cast<std::size_t>(n_);
  return (wrap(m[0]) * n + wrap(m[1])) * n + wrap(m[2]);
}

std::size_t Grid::negated(std::size_t flat) const {
  const auto m = modes(flat);
  return flat_index({-m[0], -m[1], -m[2]});
}

Grid Grid::refined(int factor) const {
  if (factor < 1) throw PreconditionError("Grid::refined: factor must be >= 1");
  return Grid(dim_, n_ * factor, length_, true);
}

Grid Grid::stretched(double lambda) const {
  if (!(lambda > 0.0)) throw PreconditionError("Grid::stretched: lambda must be positive");
  return Grid(dim_, n_, length_ * lambda, n_ < 16);
}

}  // namespace imlab::spectral
