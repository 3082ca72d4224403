#include "common.hpp"
#include "imlab/harness/parallel.hpp"

namespace imlab::harness {

using namespace detail;

namespace {

/// Perturbations draw from a seed offset so they are independent of the base data.
constexpr std::uint64_t kPerturbSeedOffset = 1'000'003;

std::vector<double> continuity_cell(const ExperimentConfig& cfg, std::uint64_t seed) {
  const auto params = cfg.params();
  const double sp = paramlab::critical_regularity(cfg.p);
  const auto recipe = cfg.recipe_for(seed);
  const auto w0 = roughdata::synthesize(recipe, cfg.grid());
  const dynamics::SamplePlan plan{cfg.horizon};
  const auto base = dynamics::evolve(w0, cfg.horizon, cfg.stepper, plan, nullptr);
  std::vector<double> d;
  for (double eps : cfg.sweep_eps) {
    const auto w = roughdata::perturb(w0, eps, seed + kPerturbSeedOffset, recipe, params);
    const auto wt = dynamics::evolve(w, cfg.horizon, cfg.stepper, plan, nullptr);
    d.push_back(spectral::pair_norm(wt.u - base.u, wt.v - base.v, sp));
  }
  return d;
}

}  // namespace

ExperimentResult run_continuity(const ExperimentConfig& cfg, int workers) {
  const auto cells = parallel_map<std::vector<double>>(cfg.seeds.size(), workers, [&](std::size_t i) {
    return with_context("continuity", cfg.seeds[i], "", [&] { return continuity_cell(cfg, cfg.seeds[i]); });
  });

  ExperimentResult res;
  res.schema = {"continuity", 1, {"seed", "eps", "t_star", "distance"}};
  bool monotone_all = true, slope_all = true;
  double min_slope = INFINITY;
  auto per_seed = nlohmann::ordered_json::array();
  for (std::size_t si = 0; si < cells.size(); ++si) {
    const auto& d = cells[si];
    std::vector<double> xs, ys;
    bool monotone = true;
    for (std::size_t j = 0; j < d.size(); ++j) {
      res.records.push_back({{static_cast<I64>(cfg.seeds[si]), cfg.sweep_eps[j], cfg.horizon, d[j]}});
      if (j > 0 && d[j] > d[j - 1]) monotone = false;
      if (cfg.sweep_eps[j] > 0.0) {
        xs.push_back(cfg.sweep_eps[j]);
        ys.push_back(d[j]);
      }
    }
    const double slope = trend_slope(xs, ys);
    monotone_all = monotone_all && monotone;
    slope_all = slope_all && std::isfinite(slope) && slope >= cfg.thresholds.continuity_slope_min;
    min_slope = std::min(min_slope, slope);
    per_seed.push_back({{"seed", cfg.seeds[si]}, {"slope", slope}, {"monotone", monotone}});
  }
  res.summary["eps"] = cfg.sweep_eps;
  res.summary["t_star"] = cfg.horizon;
  res.summary["per_seed"] = per_seed;
  res.summary["min_slope"] = min_slope;
  res.assertions.push_back({"monotone_in_eps", monotone_all, "d(eps) non-increasing as eps decreases, every seed"});
  res.assertions.push_back({"loglog_slope", slope_all,
                            "min slope " + fmt(min_slope) + " >= " + fmt(cfg.thresholds.continuity_slope_min)});
  return res;
}

}  // namespace imlab::harness
