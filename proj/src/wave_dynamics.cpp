#include "imlab/wave_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "imlab/errors.hpp"

namespace imlab::dynamics {

using spectral::cplx;
using spectral::Grid;

namespace {

// cos(|k|t) and sin(|k|t) per mode; reused across steps of equal size.
struct RotationTable {
  std::vector<double> cos_kt;
  std::vector<double> sin_kt;
  double t = 0.0;

  RotationTable(const Grid& g, double t_) : cos_kt(g.size()), sin_kt(g.size()), t(t_) {
    const auto& kmag = g.wavenumber_magnitudes();
    for (std::size_t i = 0; i < g.size(); ++i) {
      cos_kt[i] = std::cos(kmag[i] * t);
      sin_kt[i] = std::sin(kmag[i] * t);
    }
  }
};

WaveState rotate(const WaveState& w, const RotationTable& rot) {
  const Grid& g = w.grid();
  const auto& kmag = g.wavenumber_magnitudes();
  const auto u = w.u.coeffs();
  const auto v = w.v.coeffs();
  std::vector<cplx> nu(u.size()), nv(v.size());
  for (std::size_t i = 1; i < u.size(); ++i) {
    const double k = kmag[i];
    const double c = rot.cos_kt[i];
    const double s = rot.sin_kt[i];
    nu[i] = c * u[i] + (s / k) * v[i];
    nv[i] = -k * s * u[i] + c * v[i];
  }
  return WaveState(SpectralField(g, std::move(nu)), SpectralField(g, std::move(nv)), w.t + rot.t);
}

// -|x|^{p-1} x with multiplication chains for integer p in [2, 7].
void apply_defocusing(std::vector<double>& x, double p) {
  const double pm1 = p - 1.0;
  if (pm1 == 2.0) {
    for (double& a : x) a = -a * a * a;
  } else if (pm1 == 3.0) {
    for (double& a : x) a = -std::abs(a) * a * a * a;
  } else if (pm1 == 4.0) {
    for (double& a : x) {
      const double a2 = a * a;
      a = -a2 * a2 * a;
    }
  } else {
    for (double& a : x) a = -std::pow(std::abs(a), pm1) * a;
  }
}

void require_finite(const WaveState& w) {
  if (!w.u.all_finite() || !w.v.all_finite()) {
    std::ostringstream os;
    os << "non-finite state at t = " << w.t;
    throw BlowUpError(os.str(), w.t);
  }
}

WaveState kick_with(const WaveState& w, double t, const SpectralField& force) {
  SpectralField v = w.v;
  v.axpy(t, force);
  return WaveState(w.u, std::move(v), w.t);
}

}  // namespace

double StepperConfig::accuracy_dt_bound(double sup_abs_u, double p) {
  return 0.1 / std::pow(1.0 + sup_abs_u, (p - 1.0) / 2.0);
}

WaveState linear_propagate(const WaveState& w, double t) { return rotate(w, RotationTable(w.grid(), t)); }

SpectralField nonlinear_force(const SpectralField& u, const StepperConfig& cfg) {
  if (cfg.nonlinearity == Nonlinearity::none) return SpectralField(u.grid());
  auto samples = spectral::to_physical(u, cfg.oversample);
  apply_defocusing(samples, cfg.p);
  return spectral::from_physical(samples, u.grid(), cfg.oversample);
}

WaveState nonlinear_kick(const WaveState& w, double t, const StepperConfig& cfg) {
  return kick_with(w, t, nonlinear_force(w.u, cfg));
}

WaveState strang_step(const WaveState& w, const StepperConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw PreconditionError("strang_step requires dt > 0");
  const double h = cfg.dt;
  WaveState out = nonlinear_kick(linear_propagate(nonlinear_kick(w, h / 2, cfg), h), h / 2, cfg);
  require_finite(out);
  return out;
}

WaveState strang_step_back(const WaveState& w, const StepperConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw PreconditionError("strang_step_back requires dt > 0");
  const double h = -cfg.dt;
  WaveState out = nonlinear_kick(linear_propagate(nonlinear_kick(w, h / 2, cfg), h), h / 2, cfg);
  require_finite(out);
  return out;
}

Schedule make_schedule(double T, double dt, const SamplePlan& plan) {
  if (!(T > 0.0)) throw PreconditionError("evolve requires T > 0");
  if (!(dt > 0.0)) throw PreconditionError("evolve requires dt > 0");
  const double interval = plan.interval > 0.0 ? plan.interval : T;
  const double ratio = T / interval;
  const double samples = std::round(ratio);
  if (samples < 1.0 || std::abs(ratio - samples) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream os;
    os << "horizon " << T << " is not a multiple of the sample interval " << interval;
    throw PreconditionError(os.str());
  }
  Schedule s;
  s.samples = static_cast<std::size_t>(samples);
  s.steps_per_sample = static_cast<std::size_t>(std::ceil(interval / dt - 1e-9));
  s.dt = interval / static_cast<double>(s.steps_per_sample);
  return s;
}

WaveState evolve(const WaveState& w, double T, const StepperConfig& cfg, const SamplePlan& plan,
                 const Observer& observe) {
  const Schedule sched = make_schedule(T, cfg.dt, plan);
  StepperConfig c = cfg;
  c.dt = sched.dt;
  const double h = sched.dt;
  const RotationTable rot(w.grid(), h);
  const double t0 = w.t;

  WaveState state = w;
  if (observe) observe(state);
  SpectralField force = nonlinear_force(state.u, c);
  std::size_t step = 0;
  for (std::size_t sample = 0; sample < sched.samples; ++sample) {
    for (std::size_t k = 0; k < sched.steps_per_sample; ++k) {
      state = rotate(kick_with(state, h / 2, force), rot);
      force = nonlinear_force(state.u, c);
      state = kick_with(state, h / 2, force);
      ++step;
      state.t = t0 + static_cast<double>(step) * h;
      require_finite(state);
    }
    if (observe) observe(state);
  }
  return state;
}

std::vector<WaveState> evolve_collect(const WaveState& w, double T, const StepperConfig& cfg,
                                      const SamplePlan& plan) {
  std::vector<WaveState> out;
  evolve(w, T, cfg, plan, [&out](const WaveState& s) { out.push_back(s); });
  return out;
}

double residual(const WaveState& prev, const WaveState& mid, const WaveState& next, const StepperConfig& cfg) {
  const Grid& g = mid.grid();
  if (!(prev.grid() == g) || !(next.grid() == g)) throw PreconditionError("residual: grids differ");
  const double dt = mid.t - prev.t;
  if (!(dt > 0.0) || std::abs((next.t - mid.t) - dt) > 1e-9 * dt)
    throw PreconditionError("residual: states must be equally spaced in time");
  const SpectralField force = nonlinear_force(mid.u, cfg);
  const auto& kmag = g.wavenumber_magnitudes();
  const auto um = prev.u.coeffs(), u0 = mid.u.coeffs(), up = next.u.coeffs(), f = force.coeffs();
  double sum = 0.0;
  for (std::size_t i = 1; i < u0.size(); ++i) {
    const cplx r = (up[i] - 2.0 * u0[i] + um[i]) / (dt * dt) + kmag[i] * kmag[i] * u0[i] - f[i];
    sum += std::norm(r);
  }
  return std::sqrt(g.volume() * sum);
}

EnergyParts energy(const SpectralField& u, const SpectralField& v, double p, int oversample) {
  EnergyParts e;
  const double grad = spectral::sobolev_norm(u, 1.0);
  const double vel = spectral::sobolev_norm(v, 0.0);
  e.gradient = 0.5 * grad * grad;
  e.kinetic = 0.5 * vel * vel;
  const auto samples = spectral::to_physical(u, oversample);
  double sum = 0.0;
  for (double x : samples) sum += std::pow(std::abs(x), p + 1.0);
  e.potential = u.grid().volume() * sum / static_cast<double>(samples.size()) / (p + 1.0);
  return e;
}

EnergyParts energy(const WaveState& w, double p, int oversample) { return energy(w.u, w.v, p, oversample); }

std::array<double, 3> momentum(const WaveState& w) {
  const Grid& g = w.grid();
  const auto u = w.u.coeffs();
  const auto v = w.v.coeffs();
  const double dk = g.fundamental();
  std::array<double, 3> out{};
  for (std::size_t i = 1; i < u.size(); ++i) {
    const auto m = g.modes(i);
    const cplx prod = std::conj(v[i]) * cplx(0.0, 1.0) * u[i];
    for (int a = 0; a < g.dim(); ++a) out[a] += dk * m[a] * prod.real();
  }
  for (double& x : out) x *= g.volume();
  return out;
}

double sup_abs(const SpectralField& u, int oversample) {
  const auto samples = spectral::to_physical(u, oversample);
  double m = 0.0;
  for (double x : samples) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace imlab::dynamics
