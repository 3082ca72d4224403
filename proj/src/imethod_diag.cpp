#include "imlab/imethod_diag.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "imlab/errors.hpp"
#include "imlab/multiplier.hpp"
#include "imlab/wave_dynamics.hpp"

namespace imlab::diag {

using spectral::MultiplierSpec;

namespace {

double uniform_spacing(std::span<const WaveState> traj) {
  if (traj.size() < 2) return 0.0;
  const double dt = traj[1].t - traj[0].t;
  if (!(dt > 0.0)) throw PreconditionError("trajectory time stamps must increase");
  for (std::size_t i = 2; i < traj.size(); ++i)
    if (std::abs((traj[i].t - traj[i - 1].t) - dt) > 1e-9 * dt)
      throw PreconditionError("trajectory must be uniformly sampled in time");
  return dt;
}

}  // namespace

EnergyBreakdown modified_energy(const WaveState& w, double N, double s, double p, int oversample) {
  const auto I = MultiplierSpec::i_operator(N, s);
  const auto parts = dynamics::energy(apply_multiplier(w.u, I), apply_multiplier(w.v, I), p, oversample);
  EnergyBreakdown e;
  e.gradient = parts.gradient;
  e.kinetic = parts.kinetic;
  e.potential = parts.potential;
  e.total = parts.gradient + parts.kinetic + parts.potential;
  return e;
}

double z_spatial_norm(const SpectralField& u, const TripleMQR& triple, double N, double s, int oversample) {
  const SpectralField Iu = apply_multiplier(u, MultiplierSpec::i_operator(N, s));
  return spectral::lebesgue_norm(apply_multiplier(Iu, MultiplierSpec::fractional_power(1.0 - triple.m)), triple.r,
                                 oversample);
}

double combine_in_time(std::span<const double> norms, double sample_dt, const paramlab::Extended& q) {
  if (norms.empty()) throw PreconditionError("combine_in_time: no samples");
  if (q.is_infinite()) return *std::max_element(norms.begin(), norms.end());
  if (norms.size() < 2) throw PreconditionError("combine_in_time: finite q needs at least two samples");
  if (!(sample_dt > 0.0)) throw PreconditionError("combine_in_time: sample spacing must be positive");
  const double qv = q.value();
  double sum = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    const double w = (i == 0 || i + 1 == norms.size()) ? 0.5 : 1.0;
    sum += w * std::pow(norms[i], qv);
  }
  return std::pow(sum * sample_dt, 1.0 / qv);
}

double z_norm(std::span<const WaveState> traj, const TripleMQR& triple, const PdeParams& params, double N,
              int oversample) {
  if (!paramlab::is_allowed_triple(triple, params)) {
    std::ostringstream os;
    os << "z_norm: triple (" << triple.m << ", " << (triple.q.is_infinite() ? "inf" : std::to_string(triple.q.value()))
       << ", " << triple.r << ") is not allowed";
    throw PreconditionError(os.str());
  }
  const double dt = uniform_spacing(traj);
  std::vector<double> norms;
  norms.reserve(traj.size());
  for (const auto& w : traj) norms.push_back(z_spatial_norm(w.u, triple, N, params.s, oversample));
  return combine_in_time(norms, dt, triple.q);
}

ZReport z_sup_from_series(const std::vector<TripleMQR>& triples, const std::vector<std::vector<double>>& series,
                          double sample_dt) {
  if (triples.size() != series.size()) throw PreconditionError("z_sup: one series per triple required");
  ZReport rep;
  rep.triples = triples;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    rep.values.push_back(combine_in_time(series[i], sample_dt, triples[i].q));
    rep.z_max = std::max(rep.z_max, rep.values.back());
  }
  return rep;
}

ZReport z_sup(std::span<const WaveState> traj, const PdeParams& params, double N, int oversample) {
  const auto triples = paramlab::proof_triples(params);
  const double dt = uniform_spacing(traj);
  std::vector<std::vector<double>> series(triples.size());
  for (const auto& w : traj)
    for (std::size_t i = 0; i < triples.size(); ++i)
      series[i].push_back(z_spatial_norm(w.u, triples[i], N, params.s, oversample));
  return z_sup_from_series(triples, series, dt);
}

DriftReport acl_drift(std::span<const double> energies) {
  if (energies.size() < 2) throw PreconditionError("acl_drift needs at least two samples");
  DriftReport r;
  r.e_sup = energies[0];
  for (double e : energies) {
    r.drift = std::max(r.drift, std::abs(e - energies[0]));
    r.e_sup = std::max(r.e_sup, e);
  }
  return r;
}

DriftReport acl_drift(std::span<const WaveState> traj, double N, double s, double p, int oversample) {
  std::vector<double> e;
  e.reserve(traj.size());
  for (const auto& w : traj) e.push_back(modified_energy(w, N, s, p, oversample).total);
  return acl_drift(e);
}

LemmaARatios lemma_a_ratios(const WaveState& w, double N, double s, double p, int oversample) {
  const double hs = spectral::sobolev_norm(w.u, s);
  if (!(hs > 0.0)) throw PreconditionError("lemma_a_ratios requires nonzero data");
  const double hs1 = spectral::sobolev_norm(w.v, s - 1.0);
  const double hsp = spectral::sobolev_norm(w.u, paramlab::critical_regularity(p));
  const EnergyBreakdown e = modified_energy(w, N, s, p, oversample);
  const double gain = std::pow(N, 1.0 - s);

  LemmaARatios r;
  r.gradient = std::sqrt(2.0 * e.gradient) / (gain * hs);
  r.velocity = hs1 > 0.0 ? std::sqrt(2.0 * e.kinetic) / (gain * hs1) : 0.0;
  r.potential = (p + 1.0) * e.potential / (gain * gain * hs * hs * std::pow(hsp, p - 1.0));
  r.energy = e.total / (gain * gain * paramlab::data_size_Cu(hs, hs1, hsp, p));
  return r;
}

double lemma_b_ratio(const LemmaBInputs& in, double N, double s, double p) {
  const double bracket = std::sqrt(in.e_sup) + in.T * std::pow(in.e_sup, p / (p + 1.0)) +
                         std::pow(in.z, p) / std::pow(N, (5.0 - p) / 2.0 + 1.0 - s);
  const double gain = in.norm_T - in.norm_0;
  if (bracket == 0.0) {
    if (gain == 0.0) return 0.0;
    throw PreconditionError("lemma_b_ratio: zero bracket with nonzero norm growth");
  }
  return gain / bracket;
}

double lemma_b_ratio(std::span<const WaveState> traj, const PdeParams& params, double N, int oversample) {
  if (traj.size() < 2) throw PreconditionError("lemma_b_ratio needs a sampled interval");
  LemmaBInputs in;
  in.norm_0 = spectral::pair_norm(traj.front(), params.s);
  in.norm_T = spectral::pair_norm(traj.back(), params.s);
  in.T = traj.back().t - traj.front().t;
  in.e_sup = acl_drift(traj, N, params.s, params.p, oversample).e_sup;
  in.z = z_sup(traj, params, N).z_max;
  return lemma_b_ratio(in, N, params.s, params.p);
}

WaveState scale_to_modified_energy(const WaveState& w, double target, double N, double s, double p,
                                   int oversample) {
  if (!(target > 0.0)) throw PreconditionError("scale_to_modified_energy: target must be positive");
  // E(a) = a²·quadratic + a^{p+1}·potential exactly, so only one evaluation is needed.
  const auto e = modified_energy(w, N, s, p, oversample);
  const double quad = e.kinetic + e.gradient;
  if (!(quad > 0.0)) throw PreconditionError("scale_to_modified_energy: zero data");
  auto energy_at = [&](double a) { return a * a * quad + std::pow(a, p + 1.0) * e.potential; };
  double lo = 0.0, hi = std::sqrt(target / quad);
  while (energy_at(hi) < target) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (energy_at(mid) < target ? lo : hi) = mid;
  }
  const double a = 0.5 * (lo + hi);
  return WaveState(a * w.u, a * w.v, w.t);
}

LogLogFit fit_loglog_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw PreconditionError("fit_loglog_slope: size mismatch");
  if (xs.size() < 3) throw PreconditionError("fit_loglog_slope: need at least 3 points");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw PreconditionError("fit_loglog_slope: inputs must be positive");
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(ys[i]) - my);
  }
  if (sxx == 0.0) throw PreconditionError("fit_loglog_slope: x values must not all coincide");
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = std::log(ys[i]) - (fit.intercept + fit.slope * std::log(xs[i]));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace imlab::diag
