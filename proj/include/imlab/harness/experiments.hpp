#pragma once

// The named experiments: configuration, runners and dispatch.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "imlab/harness/config.hpp"
#include "imlab/harness/records.hpp"
#include "imlab/paramlab.hpp"
#include "imlab/rough_data.hpp"
#include "imlab/wave_dynamics.hpp"

namespace imlab::harness {

/// Pass/fail thresholds; every one is a config key under `thresholds.` or `protocol.`.
struct Thresholds {
  double acl_slope_margin = 0.3;          ///< pass if median slope ≤ -(5-p)/2 + margin
  double acl_monotone_rel_tol = 0.0;      ///< drift(N') ≤ drift(N)(1 + tol) for N' > N
  double acl_control_factor = 10.0;       ///< control: drift ≤ factor × true-energy drift
  double headroom = 1.5;                  ///< held-out max ≤ headroom × calibrated constant
  double calibration_fraction = 0.5;      ///< leading share of the seed list used for calibration
  double lemma_a_trend = 0.05;            ///< |slope of ensemble max ratio vs N|
  double lemma_b_trend = 0.1;
  double growth_max_over_min = 10.0;
  double continuity_slope_min = 0.8;
  double scaling_invariance_tol = 1e-10;
  double scaling_correspondence_factor = 5.0;
  double scaling_residual_band = 10.0;    ///< rescaled residual within [1/band, band] of the scaled original
};

struct SurrogateSettings {
  bool enabled = true;
  double tau = 0.5;
  double N = 4.0;
  double energy = 0.5;      ///< modified energy the data is scaled to at t = 0
  double energy_cap = 1.0;  ///< sup of the modified energy must stay below this
  double sample_interval = 1.0 / 32.0;
};

struct ExperimentConfig {
  std::string experiment;
  int dim = 3;
  int n = 32;
  double L = 32.0;
  double p = 4.0;
  double s = 0.95;
  roughdata::DataRecipe recipe;
  dynamics::StepperConfig stepper;
  std::vector<double> sweep_N{2, 4, 8, 16};
  std::vector<double> sweep_lambda{1, 2, 4};
  std::vector<double> sweep_eps{1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> sweep_T{1, 2, 4, 8, 16};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::filesystem::path output_dir = "out";
  double horizon = 1.0;           ///< run.T: evolution length (t* for continuity)
  double sample_interval = 0.125; ///< run.sample_interval
  bool control = false;           ///< run.control: band-limited control run
  int diag_oversample = 1;        ///< refinement for Z-norm quadrature
  int energy_oversample = 2;      ///< refinement for potential-energy quadrature
  Thresholds thresholds;
  SurrogateSettings surrogate;
  std::string config_hash;

  paramlab::PdeParams params() const { return paramlab::PdeParams::make(p, s); }
  spectral::Grid grid() const { return spectral::Grid(dim, n, L); }
  roughdata::DataRecipe recipe_for(std::uint64_t seed) const;
  /// Number of leading seeds used for calibration (at least 1, at most size-1 when size ≥ 2).
  std::size_t calibration_count() const;
};

/// Reads and validates every key; unknown keys are a ConfigError.
ExperimentConfig load_experiment_config(const Config& cfg);

/// The parameter table as ordered (name, value) pairs; absent entries are omitted.
std::vector<std::pair<std::string, double>> params_rows(const paramlab::ParamsTable& t);
nlohmann::ordered_json params_json(const paramlab::ParamsTable& t);
std::string params_text(const paramlab::ParamsTable& t);

/// One row per table entry; C(u) is measured on the first seed's data and T = run.T.
ExperimentResult run_params(const ExperimentConfig& cfg);
ExperimentResult run_acl(const ExperimentConfig& cfg, int workers);
ExperimentResult run_lemma_a(const ExperimentConfig& cfg, int workers);
ExperimentResult run_lemma_b(const ExperimentConfig& cfg, int workers);
ExperimentResult run_growth(const ExperimentConfig& cfg, int workers);
ExperimentResult run_scaling(const ExperimentConfig& cfg, int workers);
ExperimentResult run_continuity(const ExperimentConfig& cfg, int workers);
ExperimentResult run_strichartz(const ExperimentConfig& cfg, int workers);

/// Dispatches on cfg.experiment and fills wall_seconds.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int workers);

const std::vector<std::string>& experiment_names();

}  // namespace imlab::harness
