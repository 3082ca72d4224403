#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "imlab/errors.hpp"
#include "imlab/harness/experiments.hpp"
#include "imlab/harness/parallel.hpp"

namespace imlab::harness {

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"params", "acl",     "lemma-a",    "lemma-b",
                                              "growth", "scaling", "continuity", "strichartz"};
  return names;
}

int worker_count() {
  const char* env = std::getenv("IMLAB_WORKERS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 256) throw ConfigError(std::string("IMLAB_WORKERS='") + env + "' is not in 1..256");
  return static_cast<int>(v);
}

roughdata::DataRecipe ExperimentConfig::recipe_for(std::uint64_t seed) const {
  roughdata::DataRecipe r = recipe;
  r.seed = seed;
  r.s_target = s;
  return r;
}

std::size_t ExperimentConfig::calibration_count() const {
  const std::size_t n = seeds.size();
  if (n < 2) return n;
  const auto c = static_cast<std::size_t>(std::floor(thresholds.calibration_fraction * static_cast<double>(n)));
  return std::clamp<std::size_t>(c, 1, n - 1);
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void require_positive_list(const std::vector<double>& xs, const std::string& key) {
  for (double x : xs) require(std::isfinite(x) && x > 0.0, key + ": entries must be positive and finite");
}

}  // namespace

ExperimentConfig load_experiment_config(const Config& c) {
  ExperimentConfig e;
  e.experiment = c.get_string("experiment", "");
  const auto& names = experiment_names();
  require(std::find(names.begin(), names.end(), e.experiment) != names.end(),
          "experiment: '" + e.experiment + "' is not one of params, acl, lemma-a, lemma-b, growth, scaling, "
          "continuity, strichartz");

  e.dim = c.get_int("grid.dim", e.dim);
  e.n = c.get_int("grid.n", e.n);
  e.L = c.get_double("grid.L", e.L);
  e.p = c.get_double("pde.p", e.p);
  e.s = c.get_double("pde.s", e.s);

  auto& r = e.recipe;
  r.k_min = c.get_double("recipe.k_min", r.k_min);
  r.k_max = c.get_double("recipe.k_max", r.k_max);
  r.A_s = c.get_double("recipe.A_s", r.A_s);
  r.velocity_ratio = c.get_double("recipe.velocity_ratio", r.velocity_ratio);
  r.window = c.get_bool("recipe.window", r.window);
  r.spectral_slope = c.get_double("recipe.spectral_slope", r.spectral_slope);

  auto& st = e.stepper;
  st.dt = c.get_double("stepper.dt", st.dt);
  st.oversample = c.get_int("stepper.oversample", st.oversample);
  const std::string nl = c.get_string("stepper.nonlinearity", "defocusing");
  if (nl == "defocusing")
    st.nonlinearity = dynamics::Nonlinearity::defocusing;
  else if (nl == "none")
    st.nonlinearity = dynamics::Nonlinearity::none;
  else
    throw ConfigError("stepper.nonlinearity: '" + nl + "' is not defocusing or none");
  st.p = e.p;

  e.sweep_N = c.get_list("sweep.N", e.sweep_N);
  e.sweep_lambda = c.get_list("sweep.lambda", e.sweep_lambda);
  e.sweep_eps = c.get_list("sweep.eps", e.sweep_eps);
  e.sweep_T = c.get_list("sweep.T", e.sweep_T);
  e.seeds = c.get_seeds("seeds", e.seeds);
  e.output_dir = c.get_string("output_dir", e.output_dir.string());
  e.horizon = c.get_double("run.T", e.horizon);
  e.sample_interval = c.get_double("run.sample_interval", e.sample_interval);
  e.control = c.get_bool("run.control", e.control);
  e.diag_oversample = c.get_int("diag.oversample", e.diag_oversample);
  e.energy_oversample = c.get_int("diag.energy_oversample", e.energy_oversample);

  auto& t = e.thresholds;
  t.acl_slope_margin = c.get_double("thresholds.acl_slope_margin", t.acl_slope_margin);
  t.acl_monotone_rel_tol = c.get_double("thresholds.acl_monotone_rel_tol", t.acl_monotone_rel_tol);
  t.acl_control_factor = c.get_double("thresholds.acl_control_factor", t.acl_control_factor);
  t.headroom = c.get_double("protocol.headroom", t.headroom);
  t.calibration_fraction = c.get_double("protocol.calibration_fraction", t.calibration_fraction);
  t.lemma_a_trend = c.get_double("thresholds.lemma_a_trend", t.lemma_a_trend);
  t.lemma_b_trend = c.get_double("thresholds.lemma_b_trend", t.lemma_b_trend);
  t.growth_max_over_min = c.get_double("thresholds.growth_max_over_min", t.growth_max_over_min);
  t.continuity_slope_min = c.get_double("thresholds.continuity_slope_min", t.continuity_slope_min);
  t.scaling_invariance_tol = c.get_double("thresholds.scaling_invariance_tol", t.scaling_invariance_tol);
  t.scaling_correspondence_factor =
      c.get_double("thresholds.scaling_correspondence_factor", t.scaling_correspondence_factor);
  t.scaling_residual_band = c.get_double("thresholds.scaling_residual_band", t.scaling_residual_band);

  auto& sg = e.surrogate;
  sg.enabled = c.get_bool("surrogate.enabled", sg.enabled);
  sg.tau = c.get_double("surrogate.tau", sg.tau);
  sg.N = c.get_double("surrogate.N", sg.N);
  sg.energy = c.get_double("surrogate.energy", sg.energy);
  sg.energy_cap = c.get_double("surrogate.energy_cap", sg.energy_cap);
  sg.sample_interval = c.get_double("surrogate.sample_interval", sg.sample_interval);

  if (const auto unused = c.unused_keys(); !unused.empty()) {
    std::string msg = "unknown config key(s):";
    for (const auto& k : unused) msg += " " + k;
    throw ConfigError(msg);
  }

  // Validation. Grid and parameter constructors carry their own checks; run
  // them here so a bad config fails before any work starts.
  try {
    (void)e.grid();
    if (e.experiment != "params") (void)e.params();
  } catch (const PreconditionError& ex) {
    throw ConfigError(ex.what());
  }
  require(r.k_max < e.grid().nyquist(),
          "recipe.k_max = " + std::to_string(r.k_max) + " must be below the Nyquist wavenumber " +
              std::to_string(e.grid().nyquist()));
  require(r.k_min >= 0.0 && r.k_min < r.k_max, "recipe needs 0 <= k_min < k_max");
  require(r.A_s > 0.0 && std::isfinite(r.A_s), "recipe.A_s must be positive");
  require(r.velocity_ratio >= 0.0 && std::isfinite(r.velocity_ratio), "recipe.velocity_ratio must be >= 0");
  require(e.stepper.dt > 0.0 && std::isfinite(e.stepper.dt), "stepper.dt must be positive");
  require(e.stepper.oversample >= 1, "stepper.oversample must be >= 1");
  require(e.diag_oversample >= 1 && e.energy_oversample >= 1, "diag oversample factors must be >= 1");
  require(e.horizon > 0.0 && e.sample_interval > 0.0, "run.T and run.sample_interval must be positive");
  require_positive_list(e.sweep_N, "sweep.N");
  require_positive_list(e.sweep_lambda, "sweep.lambda");
  require_positive_list(e.sweep_T, "sweep.T");
  for (double x : e.sweep_eps) require(std::isfinite(x) && x >= 0.0, "sweep.eps: entries must be >= 0");
  require(std::is_sorted(e.sweep_N.begin(), e.sweep_N.end()) &&
              std::adjacent_find(e.sweep_N.begin(), e.sweep_N.end()) == e.sweep_N.end(),
          "sweep.N must be strictly increasing");
  require(std::adjacent_find(e.sweep_T.begin(), e.sweep_T.end(), std::greater_equal<>()) == e.sweep_T.end(),
          "sweep.T must be strictly increasing");
  require(std::adjacent_find(e.sweep_eps.begin(), e.sweep_eps.end(), std::less_equal<>()) == e.sweep_eps.end(),
          "sweep.eps must be strictly decreasing");
  std::set<std::uint64_t> distinct(e.seeds.begin(), e.seeds.end());
  require(distinct.size() == e.seeds.size(), "seeds must be distinct");
  require(t.calibration_fraction > 0.0 && t.calibration_fraction < 1.0, "protocol.calibration_fraction in (0,1)");
  require(t.headroom >= 1.0, "protocol.headroom must be >= 1");
  require(sg.tau > 0.0 && sg.N > 0.0 && sg.energy > 0.0 && sg.sample_interval > 0.0, "surrogate settings must be positive");

  e.config_hash = c.hash_hex();
  return e;
}

}  // namespace imlab::harness
