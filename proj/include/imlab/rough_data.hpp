#pragma once

// Random initial data of prescribed roughness, the scaling transform, and
// perturbations of prescribed critical-norm size.

#include <cstdint>

#include "imlab/paramlab.hpp"
#include "imlab/spectral_field.hpp"

namespace imlab::roughdata {

using spectral::Grid;
using spectral::SpectralField;
using spectral::WaveState;

/// Recipe for random data with |û(k)| ∝ |k|^{-(s_target + dim/2)} on k_min ≤ |k| ≤ k_max.
struct DataRecipe {
  std::uint64_t seed = 1;
  double s_target = 0.95;
  /// Decay exponent of |û(k)|; negative means the default s_target + dim/2.
  double spectral_slope = -1.0;
  double k_min = 0.0;   ///< wavenumber units (2π/L per lattice step)
  double k_max = 2.5;   ///< must stay below the grid Nyquist wavenumber
  double A_s = 1.0;     ///< ‖u0‖_{Ḣ^s} after normalization
  double velocity_ratio = 1.0;  ///< ‖u1‖_{Ḣ^{s-1}} = velocity_ratio · A_s
  bool window = true;   ///< smooth bump on the central half of the box

  double slope_for(int dim) const { return spectral_slope >= 0.0 ? spectral_slope : s_target + 0.5 * dim; }
};

/// Counter-based uniform variate in [0, 1): a pure function of (seed, stream, index).
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// One random-phase field with the recipe's spectral profile, optionally
/// windowed, normalized so that its Ḣ^σ norm equals `target` (target 0 → zero field).
SpectralField synthesize_field(const DataRecipe& recipe, const Grid& grid, std::uint64_t stream, double sigma,
                               double decay, double target);

/// (u0, u1) at t = 0; ‖u0‖_{Ḣ^s} = A_s and ‖u1‖_{Ḣ^{s-1}} = velocity_ratio·A_s exactly.
/// Throws PreconditionError for k_max ≥ Nyquist, k_min ≥ k_max, or A_s ≤ 0.
WaveState synthesize(const DataRecipe& recipe, const Grid& grid);

/// u_λ(x,t) = λ^{-2/(p-1)} u(x/λ, t/λ), realized exactly on the box stretched
/// by λ: the coefficient array is reused with wavenumbers k → k/λ, v picks up
/// an extra 1/λ and the time stamp is multiplied by λ. λ must be 2^j.
WaveState rescale(const WaveState& w, double lambda, const paramlab::PdeParams& params);

/// w plus an independent random field whose Ḣ^{s_p} × Ḣ^{s_p-1} size is exactly ε.
/// The perturbation shares the recipe's band and profile but uses `seed`.
WaveState perturb(const WaveState& w, double epsilon, std::uint64_t seed, const DataRecipe& shape,
                  const paramlab::PdeParams& params);

}  // namespace imlab::roughdata
