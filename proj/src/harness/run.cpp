#include <chrono>

#include "common.hpp"

namespace imlab::harness {

ExperimentResult run_experiment(const ExperimentConfig& cfg, int workers) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult res;
  const auto& e = cfg.experiment;
  if (e == "params")
    res = run_params(cfg);
  else if (e == "acl")
    res = run_acl(cfg, workers);
  else if (e == "lemma-a")
    res = run_lemma_a(cfg, workers);
  else if (e == "lemma-b")
    res = run_lemma_b(cfg, workers);
  else if (e == "growth")
    res = run_growth(cfg, workers);
  else if (e == "scaling")
    res = run_scaling(cfg, workers);
  else if (e == "continuity")
    res = run_continuity(cfg, workers);
  else if (e == "strichartz")
    res = run_strichartz(cfg, workers);
  else
    throw ConfigError("unknown experiment '" + e + "'");
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace imlab::harness
