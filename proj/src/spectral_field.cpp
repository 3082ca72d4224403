#include "imlab/spectral_field.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "imlab/errors.hpp"

namespace imlab::spectral {

SpectralField::SpectralField(Grid grid) : grid_(std::move(grid)), coeffs_(grid_.size()) {}

SpectralField::SpectralField(Grid grid, std::vector<cplx> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size())
    throw PreconditionError("SpectralField: coefficient count does not match the grid");
  enforce_band();
}

SpectralField SpectralField::cosine_mode(const Grid& grid, const std::array<int, 3>& modes,
                                         double amplitude, double phase) {
  std::vector<cplx> c(grid.size());
  const std::size_t plus = grid.flat_index(modes);
  const std::size_t minus = grid.flat_index({-modes[0], -modes[1], -modes[2]});
  if (plus == minus) throw PreconditionError("cosine_mode: mode must be nonzero and in band");
  c[plus] = 0.5 * amplitude * std::polar(1.0, phase);
  c[minus] = std::conj(c[plus]);
  SpectralField f(grid, std::move(c));
  if (f.is_zero()) throw PreconditionError("cosine_mode: mode lies outside the band");
  return f;
}

void SpectralField::enforce_band() {
  coeffs_[0] = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!grid_.in_band(i)) coeffs_[i] = 0.0;
}

void SpectralField::require_same_grid(const SpectralField& other) const {
  if (!(grid_ == other.grid_)) throw PreconditionError("SpectralField: grids differ");
}

double SpectralField::hermitian_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    worst = std::max(worst, std::abs(coeffs_[grid_.negated(i)] - std::conj(coeffs_[i])));
  return worst;
}

bool SpectralField::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const cplx& c) { return c == cplx{}; });
}

bool SpectralField::all_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const cplx& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : coeffs_) c *= a;
  return *this;
}

SpectralField& SpectralField::axpy(double a, const SpectralField& x) {
  require_same_grid(x);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += a * x.coeffs_[i];
  return *this;
}

WaveState::WaveState(SpectralField u_, SpectralField v_, double t_)
    : u(std::move(u_)), v(std::move(v_)), t(t_) {
  if (!(u.grid() == v.grid())) throw PreconditionError("WaveState: u and v must share one grid");
}

WaveState WaveState::zero(const Grid& grid, double t) {
  return WaveState(SpectralField(grid), SpectralField(grid), t);
}

namespace {

std::size_t fine_size(const Grid& g, int oversample) {
  const auto m = static_cast<std::size_t>(g.n()) * oversample;
  return g.dim() == 1 ? m : m * m * m;
}

// Flat index on the refined grid holding the same signed mode as `flat`.
std::size_t fine_index(const Grid& g, std::size_t flat, int oversample) {
  if (oversample == 1) return flat;
  const int big = g.n() * oversample;
  const auto m = g.modes(flat);
  auto wrap = [big](int k) { return static_cast<std::size_t>(((k % big) + big) % big); };
  if (g.dim() == 1) return wrap(m[0]);
  const auto b = static_cast<std::size_t>(big);
  return (wrap(m[0]) * b + wrap(m[1])) * b + wrap(m[2]);
}

}  // namespace

std::vector<double> to_physical(const SpectralField& f, int oversample) {
  if (oversample < 1) throw PreconditionError("to_physical: oversample must be >= 1");
  const Grid& g = f.grid();
  std::vector<cplx> buf(fine_size(g, oversample));
  const auto c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != cplx{}) buf[fine_index(g, i, oversample)] = c[i];
  detail::fft_inplace(buf, g.dim(), g.n() * oversample, detail::Direction::backward);
  std::vector<double> out(buf.size());
  std::transform(buf.begin(), buf.end(), out.begin(), [](const cplx& z) { return z.real(); });
  return out;
}

SpectralField from_physical(std::span<const double> samples, const Grid& grid, int oversample) {
  if (oversample < 1) throw PreconditionError("from_physical: oversample must be >= 1");
  if (samples.size() != fine_size(grid, oversample))
    throw PreconditionError("from_physical: sample count does not match the grid");
  std::vector<cplx> buf(samples.begin(), samples.end());
  detail::fft_inplace(buf, grid.dim(), grid.n() * oversample, detail::Direction::forward);
  const double scale = 1.0 / static_cast<double>(buf.size());
  std::vector<cplx> c(grid.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = buf[fine_index(grid, i, oversample)] * scale;
  std::vector<cplx> sym(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) sym[i] = 0.5 * (c[i] + std::conj(c[grid.negated(i)]));
  return SpectralField(grid, std::move(sym));
}

double sobolev_norm(const SpectralField& f, double sigma) {
  const Grid& g = f.grid();
  const auto& kmag = g.wavenumber_magnitudes();
  const auto c = f.coeffs();
  double sum = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double a2 = std::norm(c[i]);
    if (a2 == 0.0) continue;
    sum += (sigma == 0.0 ? 1.0 : std::pow(kmag[i], 2.0 * sigma)) * a2;
  }
  return std::sqrt(g.volume() * sum);
}

double pair_norm(const SpectralField& u, const SpectralField& v, double sigma) {
  const double a = sobolev_norm(u, sigma);
  const double b = sobolev_norm(v, sigma - 1.0);
  return std::sqrt(a * a + b * b);
}

double pair_norm(const WaveState& w, double sigma) { return pair_norm(w.u, w.v, sigma); }

double lebesgue_norm_samples(std::span<const double> samples, double volume, double r) {
  if (!(r >= 1.0)) throw PreconditionError("lebesgue_norm: need r >= 1");
  if (std::isinf(r)) {
    double m = 0.0;
    for (double x : samples) m = std::max(m, std::abs(x));
    return m;
  }
  double sum = 0.0;
  if (r == 2.0) {
    for (double x : samples) sum += x * x;
  } else {
    for (double x : samples) sum += std::pow(std::abs(x), r);
  }
  return std::pow(volume * sum / static_cast<double>(samples.size()), 1.0 / r);
}

double lebesgue_norm(const SpectralField& f, double r, int oversample) {
  const auto samples = to_physical(f, oversample);
  return lebesgue_norm_samples(samples, f.grid().volume(), r);
}

std::pair<SpectralField, SpectralField> frequency_split(const SpectralField& f, double N) {
  if (!(N > 0.0)) throw PreconditionError("frequency_split requires N > 0");
  const Grid& g = f.grid();
  const auto c = f.coeffs();
  std::vector<cplx> low(c.size()), high(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) (g.kmag(i) <= N ? low : high)[i] = c[i];
  return {SpectralField(g, std::move(low)), SpectralField(g, std::move(high))};
}

double inner_product(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw PreconditionError("inner_product: grids differ");
  const auto a = f.coeffs();
  const auto b = g.coeffs();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (std::conj(a[i]) * b[i]).real();
  return f.grid().volume() * sum;
}

}  // namespace imlab::spectral
