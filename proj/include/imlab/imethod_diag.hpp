#pragma once

// Measurements built on the I-operator: the modified energy E(Iu), space-time
// Z norms over allowed triples, energy drift, the ratios of the data-size and
// increment inequalities, and log-log slope fits.

#include <span>
#include <vector>

#include "imlab/paramlab.hpp"
#include "imlab/spectral_field.hpp"

namespace imlab::diag {

using paramlab::PdeParams;
using paramlab::TripleMQR;
using spectral::SpectralField;
using spectral::WaveState;

struct EnergyBreakdown {
  double kinetic = 0.0;    ///< ½‖∂t Iu‖²
  double gradient = 0.0;   ///< ½‖∇Iu‖²
  double potential = 0.0;  ///< ‖Iu‖^{p+1}_{L^{p+1}}/(p+1)
  double total = 0.0;
};

/// E(Iu, ∂t Iu) with I = i_operator(N, s); potential by quadrature on the
/// `oversample`-refined grid.
EnergyBreakdown modified_energy(const WaveState& w, double N, double s, double p, int oversample = 2);

/// ‖D^{1-m} I u(t)‖_{L^r_x} at one time.
double z_spatial_norm(const SpectralField& u, const TripleMQR& triple, double N, double s, int oversample = 1);

/// Combines per-sample spatial norms into the L^q_t norm over a uniformly
/// sampled interval: trapezoid rule on the q-th power, max for q = ∞.
/// Finite q needs at least two samples.
double combine_in_time(std::span<const double> spatial_norms, double sample_dt, const paramlab::Extended& q);

/// Z_{m,q,r}(J,u) = ‖D^{1-m} I u‖_{L^q_J L^r_x} over a uniformly sampled trajectory.
/// Rejects triples outside the allowed region for `params`.
double z_norm(std::span<const WaveState> traj, const TripleMQR& triple, const PdeParams& params, double N,
              int oversample = 1);

struct ZReport {
  std::vector<TripleMQR> triples;
  std::vector<double> values;
  double z_max = 0.0;
};

/// z_norm over proof_triples(params) (which already includes the q = ∞ triple).
ZReport z_sup(std::span<const WaveState> traj, const PdeParams& params, double N, int oversample = 1);

/// Same report from per-triple spatial norm series sampled every `sample_dt`.
ZReport z_sup_from_series(const std::vector<TripleMQR>& triples, const std::vector<std::vector<double>>& series,
                          double sample_dt);

struct DriftReport {
  double drift = 0.0;  ///< sup_t |E(t) - E(0)|
  double e_sup = 0.0;  ///< sup_t E(t)
};

DriftReport acl_drift(std::span<const double> energies);
DriftReport acl_drift(std::span<const WaveState> traj, double N, double s, double p, int oversample = 2);

/// LHS/RHS of the four data-size inequalities at t = 0:
///   ‖∇Iu0‖ vs N^{1-s}‖u0‖_{Ḣ^s},  ‖Iu1‖ vs N^{1-s}‖u1‖_{Ḣ^{s-1}},
///   ‖Iu0‖^{p+1}_{L^{p+1}} vs N^{2(1-s)}‖u0‖²_{Ḣ^s}‖u0‖^{p-1}_{Ḣ^{s_p}},
///   E(Iu0, Iu1) vs N^{2(1-s)} C(u).
struct LemmaARatios {
  double gradient = 0.0;
  double velocity = 0.0;
  double potential = 0.0;
  double energy = 0.0;
};

LemmaARatios lemma_a_ratios(const WaveState& w, double N, double s, double p, int oversample = 2);

/// Inputs of the increment inequality over J = [0, T].
struct LemmaBInputs {
  double norm_T = 0.0;   ///< ‖(u(T), ∂t u(T))‖_{Ḣ^s × Ḣ^{s-1}}
  double norm_0 = 0.0;   ///< same at t = 0
  double e_sup = 0.0;    ///< sup_J E(t)
  double T = 0.0;
  double z = 0.0;        ///< Z(J,u)
};

/// (norm_T - norm_0) / (E^{1/2} + T E^{p/(p+1)} + Z^p / N^{(5-p)/2 + 1 - s}); 0 when both vanish.
double lemma_b_ratio(const LemmaBInputs& in, double N, double s, double p);
double lemma_b_ratio(std::span<const WaveState> traj, const PdeParams& params, double N, int oversample = 2);

/// (a·u0, a·u1) with a > 0 chosen so that the modified energy equals `target`
/// (to 1e-13 relative). Requires nonzero data and target > 0.
WaveState scale_to_modified_energy(const WaveState& w, double target, double N, double s, double p,
                                   int oversample = 2);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< RMS of the log-space residuals
};

/// Least squares of log y against log x; ≥ 3 points, all positive.
LogLogFit fit_loglog_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace imlab::diag
