#include "imlab/rough_data.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "imlab/errors.hpp"
#include "imlab/paramlab.hpp"

namespace imlab::roughdata {

using spectral::cplx;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double bump(double y) {
  if (std::abs(y) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - y * y));
}

// Multiplies the physical samples by a product of bumps supported on the
// central half of the box along every axis.
void apply_window(std::vector<double>& samples, const Grid& grid) {
  const int n = grid.n();
  const double L = grid.length();
  std::vector<double> w1(n);
  for (int j = 0; j < n; ++j) w1[j] = bump((j * L / n - 0.5 * L) / (0.25 * L));
  if (grid.dim() == 1) {
    for (int j = 0; j < n; ++j) samples[j] *= w1[j];
    return;
  }
  std::size_t idx = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) samples[idx++] *= w1[a] * w1[b] * w1[c];
}

void validate(const DataRecipe& r, const Grid& grid) {
  if (!(r.k_max < grid.nyquist())) {
    std::ostringstream os;
    os << "recipe k_max = " << r.k_max << " must be below the Nyquist wavenumber " << grid.nyquist();
    throw PreconditionError(os.str());
  }
  if (!(r.k_min >= 0.0) || !(r.k_min < r.k_max)) throw PreconditionError("recipe needs 0 <= k_min < k_max");
  if (!(r.A_s > 0.0)) throw PreconditionError("recipe needs A_s > 0");
  if (!(r.velocity_ratio >= 0.0)) throw PreconditionError("recipe needs velocity_ratio >= 0");
}

bool is_power_of_two(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) return false;
  int exponent = 0;
  return std::frexp(lambda, &exponent) == 0.5;
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t h = splitmix64(seed ^ splitmix64(stream ^ splitmix64(index)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

SpectralField synthesize_field(const DataRecipe& recipe, const Grid& grid, std::uint64_t stream, double sigma,
                               double decay, double target) {
  validate(recipe, grid);
  if (target == 0.0) return SpectralField(grid);
  std::vector<cplx> c(grid.size());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double k = grid.kmag(i);
    if (!grid.in_band(i) || k < recipe.k_min || k > recipe.k_max) continue;
    const std::size_t j = grid.negated(i);
    if (j < i) continue;  // the partner carries the conjugate
    const double phase = 2.0 * std::numbers::pi * counter_uniform(recipe.seed, stream, i);
    c[i] = std::polar(std::pow(k, -decay), phase);
    c[j] = std::conj(c[i]);
  }
  SpectralField f(grid, std::move(c));
  if (f.is_zero()) throw PreconditionError("recipe band [k_min, k_max] contains no grid wavenumber");
  if (recipe.window) {
    auto samples = spectral::to_physical(f);
    apply_window(samples, grid);
    f = spectral::from_physical(samples, grid);
  }
  const double norm = spectral::sobolev_norm(f, sigma);
  if (!(norm > 0.0)) throw PreconditionError("synthesized field vanished after windowing");
  f *= target / norm;
  return f;
}

WaveState synthesize(const DataRecipe& recipe, const Grid& grid) {
  validate(recipe, grid);
  const double decay = recipe.slope_for(grid.dim());
  const double s = recipe.s_target;
  SpectralField u0 = synthesize_field(recipe, grid, 0, s, decay, recipe.A_s);
  SpectralField u1 = synthesize_field(recipe, grid, 1, s - 1.0, decay - 1.0, recipe.velocity_ratio * recipe.A_s);
  return WaveState(std::move(u0), std::move(u1), 0.0);
}

WaveState rescale(const WaveState& w, double lambda, const paramlab::PdeParams& params) {
  if (!is_power_of_two(lambda)) {
    std::ostringstream os;
    os << "rescale: lambda = " << lambda << " is not a power of two";
    throw PreconditionError(os.str());
  }
  if (!(params.p > 1.0)) throw PreconditionError("rescale: p must exceed 1");
  if (lambda == 1.0) return w;
  const double a = 2.0 / (params.p - 1.0);
  const double scale_u = std::pow(lambda, -a);
  const double scale_v = std::pow(lambda, -a - 1.0);
  const Grid g = w.grid().stretched(lambda);
  std::vector<cplx> u(w.u.coeffs().begin(), w.u.coeffs().end());
  std::vector<cplx> v(w.v.coeffs().begin(), w.v.coeffs().end());
  for (auto& c : u) c *= scale_u;
  for (auto& c : v) c *= scale_v;
  return WaveState(SpectralField(g, std::move(u)), SpectralField(g, std::move(v)), w.t * lambda);
}

WaveState perturb(const WaveState& w, double epsilon, std::uint64_t seed, const DataRecipe& shape,
                  const paramlab::PdeParams& params) {
  if (!(epsilon >= 0.0)) throw PreconditionError("perturb requires epsilon >= 0");
  if (epsilon == 0.0) return w;
  const double sp = paramlab::critical_regularity(params.p);
  DataRecipe r = shape;
  r.seed = seed;
  const double decay = r.slope_for(w.grid().dim());
  const double half = epsilon / std::sqrt(2.0);
  SpectralField du = synthesize_field(r, w.grid(), 0, sp, decay, half);
  SpectralField dv = synthesize_field(r, w.grid(), 1, sp - 1.0, decay - 1.0, half);
  return WaveState(w.u + du, w.v + dv, w.t);
}

}  // namespace imlab::roughdata
