// Acceptance suite. `acceptance` runs every criterion; `acceptance 4 7` runs a
// subset. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "imlab/errors.hpp"
#include "imlab/harness/config.hpp"
#include "imlab/harness/experiments.hpp"
#include "imlab/harness/parallel.hpp"
#include "imlab/harness/records.hpp"
#include "imlab/imethod_diag.hpp"
#include "imlab/multiplier.hpp"
#include "imlab/paramlab.hpp"
#include "imlab/rough_data.hpp"
#include "imlab/spectral_field.hpp"
#include "imlab/wave_dynamics.hpp"

namespace fs = std::filesystem;
using namespace imlab;
using spectral::Grid;
using spectral::SpectralField;
using spectral::WaveState;

namespace {

// Tolerances and targets of the criteria.
constexpr double kExactTol = 1e-12;
constexpr double kGroupLawTol = 1e-12;
constexpr int kThresholdSamples = 10000;
constexpr int kLowerBoundSamples = 1000;
constexpr double kOrderLo = 1.8, kOrderHi = 2.2;
constexpr double kEnergyDriftMax = 1e-4;
constexpr double kResidualRatioLo = 4.0 * 0.8, kResidualRatioHi = 4.0 * 1.2;
constexpr double kAclMargin = 0.3;
constexpr double kHeadroom = 1.5;
constexpr double kLemmaATrend = 0.05;
constexpr double kScalingTol = 1e-10;
constexpr double kCorrespondenceFactor = 5.0;
constexpr double kGrowthMaxOverMin = 10.0;
constexpr double kContinuitySlope = 0.8;
constexpr double kStrichartzEnergyCap = 1.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

fs::path config_path(const std::string& name) { return fs::path(IMLAB_CONFIG_DIR) / (name + ".cfg"); }

harness::ExperimentConfig load(const std::string& name) {
  auto c = harness::Config::load(config_path(name));
  return harness::load_experiment_config(c);
}

Outcome run_and_report(const harness::ExperimentConfig& cfg) {
  auto res = harness::run_experiment(cfg, harness::worker_count());
  harness::emit(res, cfg.config_hash, cfg.seeds, fs::path(IMLAB_ACCEPTANCE_OUT));
  std::string detail;
  for (const auto& a : res.assertions) {
    if (!detail.empty()) detail += "; ";
    detail += (a.passed ? "" : "FAILED ") + a.name + " [" + a.detail + "]";
  }
  return {res.all_passed(), detail};
}

SpectralField random_field(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<double> x(g.size());
  for (auto& v : x) v = nd(rng);
  return spectral::from_physical(x, g);
}

double rel_diff(const SpectralField& a, const SpectralField& b) {
  const double scale = std::max(spectral::sobolev_norm(a, 0.0), spectral::sobolev_norm(b, 0.0));
  return scale == 0.0 ? 0.0 : spectral::sobolev_norm(a - b, 0.0) / scale;
}

// 1
Outcome exactness() {
  const Grid g(3, 16, 2 * std::numbers::pi);
  std::mt19937_64 rng(20261015);
  double parseval = 0, compose = 0, band = 0, split = 0;
  for (int i = 0; i < 50; ++i) {
    const auto f = random_field(g, rng);
    const auto x = spectral::to_physical(f);
    double sq = 0;
    for (double v : x) sq += v * v;
    const double physical = sq * g.volume() / static_cast<double>(g.size());
    const double l2 = spectral::sobolev_norm(f, 0.0);
    parseval = std::max(parseval, std::abs(physical - l2 * l2) / (l2 * l2));

    using spectral::MultiplierSpec;
    const auto ab = spectral::apply_multiplier(spectral::apply_multiplier(f, MultiplierSpec::fractional_power(0.7)),
                                               MultiplierSpec::fractional_power(-1.3));
    compose = std::max(compose, rel_diff(ab, spectral::apply_multiplier(f, MultiplierSpec::fractional_power(-0.6))));

    for (double N : {2.0, 4.0, 8.0}) {
      const auto [lo, hi] = spectral::frequency_split(f, N);
      split = std::max(split, rel_diff(lo + hi, f));
      band = std::max(band, rel_diff(spectral::apply_multiplier(lo, MultiplierSpec::i_operator(N, 0.95)), lo));
    }
  }
  const auto params = paramlab::PdeParams::make(4.0, 0.95);
  double group = 0, invariance = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    roughdata::DataRecipe r;
    r.seed = seed;
    r.k_max = 7.0;
    const auto w = roughdata::synthesize(r, g);
    const auto a = roughdata::rescale(roughdata::rescale(w, 2.0, params), 2.0, params);
    const auto b = roughdata::rescale(w, 4.0, params);
    group = std::max({group, rel_diff(a.u, b.u), rel_diff(a.v, b.v)});
    const double n0 = spectral::pair_norm(w, paramlab::critical_regularity(params.p));
    invariance = std::max(invariance, std::abs(spectral::pair_norm(b, paramlab::critical_regularity(params.p)) - n0) / n0);
  }
  const bool pass = parseval < kExactTol && compose < kExactTol && band < kExactTol && split < kExactTol &&
                    group < kGroupLawTol && invariance < kExactTol;
  return {pass, "parseval " + fmt(parseval) + ", composition " + fmt(compose) + ", I band identity " + fmt(band) +
                    ", split " + fmt(split) + ", group law " + fmt(group) + ", H^sp invariance " + fmt(invariance) +
                    " (tol " + fmt(kExactTol) + ")"};
}

// 2
Outcome threshold_algebra() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> up(11.0 / 3.0, 5.0);
  int disagreements = 0, banded = 0;
  for (int i = 0; i < kThresholdSamples; ++i) {
    const double p = up(rng);
    std::uniform_real_distribution<double> us(paramlab::critical_regularity(p), 1.0);
    const double s = us(rng);
    const double s0 = paramlab::threshold_s0(p);
    if (std::abs(s - s0) <= paramlab::kBoundaryBand) {
      ++banded;
      continue;
    }
    const auto v = paramlab::threshold_equivalence(s, p);
    if (v != (s > s0 ? paramlab::Verdict::yes : paramlab::Verdict::no)) ++disagreements;
  }
  int violations = 0;
  for (int i = 0; i < kLowerBoundSamples; ++i) {
    const double p = up(rng);
    const double s0 = paramlab::threshold_s0(p);
    for (double b : paramlab::threshold_lower_bounds(p))
      if (!(s0 >= b)) ++violations;
  }
  return {disagreements == 0 && violations == 0,
          std::to_string(disagreements) + " disagreements in " + std::to_string(kThresholdSamples) + " samples (" +
              std::to_string(banded) + " in the boundary band), " + std::to_string(violations) +
              " lower-bound violations in " + std::to_string(kLowerBoundSamples)};
}

// 3
Outcome solver() {
  const harness::ExperimentConfig defaults;  // n = 32, L = 32, default rough recipe
  const Grid g = defaults.grid();
  const auto w = roughdata::synthesize(defaults.recipe_for(1), g);
  auto distance = [](const WaveState& a, const WaveState& b) {
    return spectral::pair_norm(a.u - b.u, a.v - b.v, 1.0);
  };

  std::vector<WaveState> ends;
  for (double dt : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    dynamics::StepperConfig cfg;
    cfg.dt = dt;
    ends.push_back(dynamics::evolve(w, 1.0, cfg, {1.0}, nullptr));
  }
  const double order = std::log2(distance(ends[0], ends[1]) / distance(ends[1], ends[2]));

  dynamics::StepperConfig cfg;
  cfg.dt = std::ldexp(1.0, -8);
  const double e0 = dynamics::energy(w, cfg.p).total();
  double drift = 0;
  dynamics::evolve(w, 8.0, cfg, {0.125}, [&](const WaveState& x) {
    drift = std::max(drift, std::abs(dynamics::energy(x, cfg.p).total() - e0) / e0);
  });

  std::vector<double> res;
  for (double dt : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    dynamics::StepperConfig c;
    c.dt = dt;
    const auto a = dynamics::strang_step(w, c);
    const auto b = dynamics::strang_step(a, c);
    res.push_back(dynamics::residual(w, a, b, c));
  }
  const double r1 = res[0] / res[1], r2 = res[1] / res[2];
  const bool pass = order >= kOrderLo && order <= kOrderHi && drift < kEnergyDriftMax &&
                    r1 >= kResidualRatioLo && r1 <= kResidualRatioHi && r2 >= kResidualRatioLo &&
                    r2 <= kResidualRatioHi;
  return {pass, "self-convergence order " + fmt(order) + " in [" + fmt(kOrderLo) + ", " + fmt(kOrderHi) +
                    "], energy drift " + fmt(drift) + " < " + fmt(kEnergyDriftMax) + " (T=8, dt=2^-8), residual ratios " +
                    fmt(r1) + ", " + fmt(r2) + " in [" + fmt(kResidualRatioLo) + ", " + fmt(kResidualRatioHi) + "]"};
}

// 4
Outcome acl() {
  auto cfg = load("acl");
  cfg.thresholds.acl_slope_margin = kAclMargin;
  cfg.thresholds.acl_monotone_rel_tol = 0.0;
  if (cfg.p != 4.0 || cfg.s != 0.95 || cfg.sweep_N != std::vector<double>{2, 4, 8, 16} || cfg.seeds.size() != 5 ||
      cfg.control)
    return {false, "acl.cfg does not describe the default configuration"};
  return run_and_report(cfg);
}

// 5
Outcome lemma_a() {
  auto cfg = load("lemma_a");
  cfg.thresholds.headroom = kHeadroom;
  cfg.thresholds.lemma_a_trend = kLemmaATrend;
  if (cfg.seeds.size() < 1000 || cfg.sweep_N.front() != 2 || cfg.sweep_N.back() != 64)
    return {false, "lemma_a.cfg must cover 1000 data sets and N from 2 to 64"};
  return run_and_report(cfg);
}

// 6
Outcome scaling() {
  auto cfg = load("scaling");
  cfg.thresholds.scaling_invariance_tol = kScalingTol;
  cfg.thresholds.scaling_correspondence_factor = kCorrespondenceFactor;
  for (double l : {2.0, 4.0})
    if (std::find(cfg.sweep_lambda.begin(), cfg.sweep_lambda.end(), l) == cfg.sweep_lambda.end())
      return {false, "scaling.cfg must include lambda 2 and 4"};
  return run_and_report(cfg);
}

// 7
Outcome growth() {
  auto cfg = load("growth");
  cfg.thresholds.growth_max_over_min = kGrowthMaxOverMin;
  if (cfg.p != 4.0 || cfg.s != 0.95 || cfg.sweep_T != std::vector<double>{1, 2, 4, 8, 16} || cfg.seeds.size() != 5)
    return {false, "growth.cfg does not describe the default configuration"};
  return run_and_report(cfg);
}

// 8
Outcome continuity() {
  auto cfg = load("continuity");
  cfg.thresholds.continuity_slope_min = kContinuitySlope;
  return run_and_report(cfg);
}

// 9
Outcome strichartz() {
  auto cfg = load("strichartz");
  cfg.thresholds.headroom = kHeadroom;
  cfg.surrogate.enabled = true;
  cfg.surrogate.energy_cap = kStrichartzEnergyCap;
  if (cfg.seeds.size() != 20) return {false, "strichartz.cfg must use 20 seeds"};
  return run_and_report(cfg);
}

// 10: every experiment at reduced size, twice serially and once on three workers.
Outcome determinism() {
  const std::map<std::string, std::vector<std::string>> shrink = {
      {"params", {"grid.n=16", "grid.L=16"}},
      {"acl", {"grid.n=16", "recipe.k_max=7", "seeds=1:3", "run.T=0.25", "stepper.dt=0.015625"}},
      {"lemma_a", {"grid.n=16", "recipe.k_max=20", "seeds=1:6", "sweep.N=2,4,8"}},
      {"lemma_b", {"grid.n=16", "recipe.k_max=7", "seeds=1:4", "run.T=0.25", "sweep.N=4,8"}},
      {"growth", {"grid.n=16", "grid.L=16", "seeds=1:3", "sweep.T=0.25,0.5,1"}},
      {"scaling", {"grid.n=16", "grid.L=16", "seeds=1:2", "sweep.lambda=1,2", "run.T=0.25"}},
      {"continuity", {"grid.n=16", "grid.L=16", "seeds=1:3", "run.T=0.25"}},
      {"strichartz", {"grid.n=16", "recipe.k_max=7", "seeds=1:4", "run.T=0.5", "surrogate.tau=0.25"}},
  };
  std::string mismatched;
  for (const auto& [name, overrides] : shrink) {
    auto c = harness::Config::load(config_path(name));
    for (const auto& o : overrides) c.set_override(o);
    const auto cfg = harness::load_experiment_config(c);
    auto csv = [&](int workers) {
      const auto r = harness::run_experiment(cfg, workers);
      std::ostringstream os;
      harness::write_csv(os, r.schema, r.records, cfg.config_hash);
      return os.str() + r.summary.dump();
    };
    const auto first = csv(1);
    if (first != csv(1) || first != csv(3)) mismatched += " " + name;
  }
  return {mismatched.empty(), mismatched.empty() ? "8 experiments byte-identical across re-runs and 1 vs 3 workers"
                                                 : "differs:" + mismatched};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "exactness", exactness},     {2, "threshold_algebra", threshold_algebra},
      {3, "solver", solver},           {4, "almost_conservation", acl},
      {5, "lemma_a_ratios", lemma_a},  {6, "scaling", scaling},
      {7, "growth", growth},           {8, "continuity", continuity},
      {9, "strichartz", strichartz},   {10, "determinism", determinism},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  fs::create_directories(IMLAB_ACCEPTANCE_OUT);

  bool all_pass = true;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
