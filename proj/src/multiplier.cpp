#include "imlab/multiplier.hpp"

#include <cmath>

#include "imlab/errors.hpp"

namespace imlab::spectral {

double smoothstep5(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
}

double eta(double rho, double s) {
  if (rho <= 1.0) return 1.0;
  if (rho >= 2.0) return std::pow(rho, -(1.0 - s));
  return std::pow(rho, -(1.0 - s) * smoothstep5(std::log2(rho)));
}

double MultiplierSpec::symbol(double kabs) const {
  switch (kind) {
    case MultiplierKind::fractional_power:
      return sigma == 0.0 ? 1.0 : std::pow(kabs, sigma);
    case MultiplierKind::i_operator:
      return eta(kabs / N, s);
    case MultiplierKind::sharp_low:
      return kabs <= N ? 1.0 : 0.0;
    case MultiplierKind::sharp_high:
      return kabs > N ? 1.0 : 0.0;
    case MultiplierKind::eta_only: {
      const double rho = kabs / N;
      return std::pow(rho, 1.0 - s) * eta(rho, s);
    }
  }
  return 1.0;
}

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& m) {
  if (m.kind != MultiplierKind::fractional_power && !(m.N > 0.0))
    throw PreconditionError("apply_multiplier: N must be positive");
  const Grid& g = f.grid();
  const auto c = f.coeffs();
  if (m.kind == MultiplierKind::fractional_power && m.sigma < 0.0 && c[0] != cplx{})
    throw PreconditionError("apply_multiplier: negative power applied to a nonzero zero mode");
  std::vector<cplx> out(c.size());
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] != cplx{}) out[i] = c[i] * m.symbol(g.kmag(i));
  return SpectralField(g, std::move(out));
}

}  // namespace imlab::spectral
