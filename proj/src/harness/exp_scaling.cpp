#include "common.hpp"
#include "imlab/harness/parallel.hpp"

namespace imlab::harness {

using namespace detail;

namespace {

struct ScalingRow {
  double invariance_sp = 0.0;   ///< relative change of the Ḣ^{s_p} × Ḣ^{s_p-1} norm
  double hs_scaling_err = 0.0;  ///< relative error of ‖u_λ‖_{Ḣ^s}/‖u‖_{Ḣ^s} against λ^{s_p-s}
  double correspondence = 0.0;  ///< max over matched times of ‖rescaled u - u_λ‖ in Ḣ^{s_p} × Ḣ^{s_p-1}
  double self_convergence = 0.0;
  double residual = 0.0;
  double residual_ratio = 0.0;  ///< rescaled residual / (λ^{dim/2-2-2/(p-1)} × original residual)
};

std::vector<spectral::WaveState> first_steps(const spectral::WaveState& w, const dynamics::StepperConfig& st) {
  std::vector<spectral::WaveState> out{w};
  out.push_back(dynamics::strang_step(out.back(), st));
  out.push_back(dynamics::strang_step(out.back(), st));
  return out;
}

ScalingRow scaling_cell(const ExperimentConfig& cfg, std::uint64_t seed, double lambda) {
  const auto params = cfg.params();
  const double sp = paramlab::critical_regularity(cfg.p);
  const auto w = roughdata::synthesize(cfg.recipe_for(seed), cfg.grid());
  const auto wl = roughdata::rescale(w, lambda, params);
  ScalingRow r;
  const double n0 = spectral::pair_norm(w, sp);
  r.invariance_sp = std::abs(spectral::pair_norm(wl, sp) - n0) / n0;
  const double expect = std::pow(lambda, sp - cfg.s);
  r.hs_scaling_err =
      std::abs(spectral::sobolev_norm(wl.u, cfg.s) / spectral::sobolev_norm(w.u, cfg.s) - expect) / expect;

  auto st_l = cfg.stepper;
  st_l.dt = cfg.stepper.dt * lambda;
  const auto orig = dynamics::evolve_collect(w, cfg.horizon, cfg.stepper, {cfg.sample_interval});
  const auto resc = dynamics::evolve_collect(wl, lambda * cfg.horizon, st_l, {lambda * cfg.sample_interval});
  if (orig.size() != resc.size()) throw Error("scaling: matched sample counts differ");
  for (std::size_t j = 0; j < orig.size(); ++j) {
    const auto mapped = roughdata::rescale(orig[j], lambda, params);
    r.correspondence = std::max(r.correspondence, spectral::pair_norm(mapped.u - resc[j].u, mapped.v - resc[j].v, sp));
  }

  auto st_half = cfg.stepper;
  st_half.dt = cfg.stepper.dt / 2.0;
  const auto coarse = dynamics::evolve(w, cfg.horizon, cfg.stepper, {cfg.horizon}, nullptr);
  const auto fine = dynamics::evolve(w, cfg.horizon, st_half, {cfg.horizon}, nullptr);
  r.self_convergence = spectral::pair_norm(coarse.u - fine.u, coarse.v - fine.v, sp);

  const auto a = first_steps(w, cfg.stepper);
  const auto b = first_steps(wl, st_l);
  const double res_o = dynamics::residual(a[0], a[1], a[2], cfg.stepper);
  r.residual = dynamics::residual(b[0], b[1], b[2], st_l);
  const double factor = std::pow(lambda, 0.5 * cfg.dim - 2.0 - 2.0 / (cfg.p - 1.0));
  r.residual_ratio = res_o > 0.0 ? r.residual / (factor * res_o) : (r.residual == 0.0 ? 1.0 : INFINITY);
  return r;
}

}  // namespace

ExperimentResult run_scaling(const ExperimentConfig& cfg, int workers) {
  const std::size_t nl = cfg.sweep_lambda.size();
  const auto cells = parallel_map<ScalingRow>(cfg.seeds.size() * nl, workers, [&](std::size_t i) {
    const auto seed = cfg.seeds[i / nl];
    const double lambda = cfg.sweep_lambda[i % nl];
    return with_context("scaling", seed, "lambda " + fmt(lambda), [&] { return scaling_cell(cfg, seed, lambda); });
  });

  ExperimentResult res;
  res.schema = {"scaling", 1,
                {"seed", "lambda", "invariance_sp", "hs_scaling_err", "correspondence", "self_convergence",
                 "residual", "residual_ratio"}};
  const auto& th = cfg.thresholds;
  bool inv_ok = true, hs_ok = true, corr_ok = true, res_ok = true;
  double worst_inv = 0.0, worst_hs = 0.0, worst_corr_ratio = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& r = cells[i];
    res.records.push_back({{static_cast<I64>(cfg.seeds[i / nl]), cfg.sweep_lambda[i % nl], r.invariance_sp,
                            r.hs_scaling_err, r.correspondence, r.self_convergence, r.residual, r.residual_ratio}});
    inv_ok = inv_ok && r.invariance_sp <= th.scaling_invariance_tol;
    hs_ok = hs_ok && r.hs_scaling_err <= th.scaling_invariance_tol;
    corr_ok = corr_ok && r.correspondence <= th.scaling_correspondence_factor * r.self_convergence;
    res_ok = res_ok && r.residual_ratio <= th.scaling_residual_band && r.residual_ratio >= 1.0 / th.scaling_residual_band;
    worst_inv = std::max(worst_inv, r.invariance_sp);
    worst_hs = std::max(worst_hs, r.hs_scaling_err);
    if (r.self_convergence > 0) worst_corr_ratio = std::max(worst_corr_ratio, r.correspondence / r.self_convergence);
  }
  res.summary["lambda"] = cfg.sweep_lambda;
  res.summary["worst_invariance_sp"] = worst_inv;
  res.summary["worst_hs_scaling_err"] = worst_hs;
  res.summary["worst_correspondence_over_self_convergence"] = worst_corr_ratio;
  res.assertions.push_back({"hsp_invariance", inv_ok, "worst " + fmt(worst_inv) + " <= " + fmt(th.scaling_invariance_tol)});
  res.assertions.push_back({"hs_scaling", hs_ok, "worst " + fmt(worst_hs) + " <= " + fmt(th.scaling_invariance_tol)});
  res.assertions.push_back({"trajectory_correspondence", corr_ok,
                            "worst correspondence / self-convergence " + fmt(worst_corr_ratio) + " <= " +
                                fmt(th.scaling_correspondence_factor)});
  res.assertions.push_back({"residual_certificate", res_ok, "rescaled residual within a factor " +
                                                                fmt(th.scaling_residual_band) + " of the scaled original"});
  return res;
}

}  // namespace imlab::harness
