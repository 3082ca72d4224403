#pragma once

// Pseudospectral solver for u_tt - Δu = -|u|^{p-1}u on the periodic box.
//
// The linear flow is applied exactly per Fourier mode; the nonlinearity is a
// kick on v evaluated pointwise on a refined grid and projected back onto the
// band (zero mode removed). Steps use the symmetric splitting
// kick(dt/2) ∘ linear(dt) ∘ kick(dt/2).

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "imlab/spectral_field.hpp"

namespace imlab::dynamics {

using spectral::SpectralField;
using spectral::WaveState;

enum class Nonlinearity {
  defocusing,  ///< F(u) = -|u|^{p-1} u
  none,        ///< F ≡ 0 (linear test mode)
};

struct StepperConfig {
  double dt = 1.0 / 64.0;
  double p = 4.0;
  int oversample = 2;
  Nonlinearity nonlinearity = Nonlinearity::defocusing;

  /// dt ≤ 0.1/(1 + sup|u|)^{(p-1)/2}: the step bound under which accuracy claims are made.
  static double accuracy_dt_bound(double sup_abs_u, double p);
};

/// Exact linear propagation by time t (t may be negative).
WaveState linear_propagate(const WaveState& w, double t);

/// P[-|u|^{p-1}u]: the nonlinearity evaluated on the refined grid and
/// projected back onto the band. Zero for Nonlinearity::none.
SpectralField nonlinear_force(const SpectralField& u, const StepperConfig& cfg);

/// v ← v + t·P[F(u)]; u and the time stamp unchanged.
WaveState nonlinear_kick(const WaveState& w, double t, const StepperConfig& cfg);

/// One symmetric step of size cfg.dt (> 0). Throws BlowUpError on non-finite output.
WaveState strang_step(const WaveState& w, const StepperConfig& cfg);

/// The same composition with a step of -cfg.dt: the exact inverse of strang_step
/// up to rounding.
WaveState strang_step_back(const WaveState& w, const StepperConfig& cfg);

/// Observation schedule: samples every `interval` time units starting at w.t.
struct SamplePlan {
  double interval = 0.0;
};

/// Resolved stepping: dt adjusted downward so that the sample interval is an
/// integer number of steps.
struct Schedule {
  double dt = 0.0;
  std::size_t steps_per_sample = 1;
  std::size_t samples = 0;  ///< number of observations after the initial one
};

/// T/interval must be an integer (to 1e-9 relative).
Schedule make_schedule(double T, double dt, const SamplePlan& plan);

using Observer = std::function<void(const WaveState&)>;

/// Steps from w.t to w.t + T, calling `observe` on the initial state and after
/// every `steps_per_sample` steps. Returns the final state. The nonlinear force
/// is reused between the trailing half kick of one step and the leading half
/// kick of the next, so results equal repeated strang_step calls exactly.
WaveState evolve(const WaveState& w, double T, const StepperConfig& cfg, const SamplePlan& plan,
                 const Observer& observe);

/// evolve() collecting every observed state (initial state included).
std::vector<WaveState> evolve_collect(const WaveState& w, double T, const StepperConfig& cfg,
                                      const SamplePlan& plan);

/// Grid-L² norm of (u₊ - 2u₀ + u₋)/dt² - Δu₀ + P[|u₀|^{p-1}u₀] for three equally spaced states.
double residual(const WaveState& prev, const WaveState& mid, const WaveState& next, const StepperConfig& cfg);

/// Energy ½‖∇u‖² + ½‖v‖² + ‖u‖^{p+1}_{L^{p+1}}/(p+1); the potential uses
/// quadrature on the `oversample`-refined grid.
struct EnergyParts {
  double gradient = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  double total() const { return gradient + kinetic + potential; }
};

EnergyParts energy(const WaveState& w, double p, int oversample = 2);
EnergyParts energy(const SpectralField& u, const SpectralField& v, double p, int oversample = 2);

/// Momentum ∫ v ∇u dx (components beyond dim are 0).
std::array<double, 3> momentum(const WaveState& w);

/// max_x |u(x)| on the `oversample`-refined grid.
double sup_abs(const SpectralField& u, int oversample = 2);

}  // namespace imlab::dynamics
