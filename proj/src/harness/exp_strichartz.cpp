#include "common.hpp"
#include "imlab/harness/parallel.hpp"

namespace imlab::harness {

using namespace detail;

namespace {

struct TripleValue {
  double N = 0.0;
  double z = 0.0;
  double data_norm = 0.0;
  double ratio = 0.0;
  double e_sup = 0.0;
};

struct StrichartzCell {
  std::vector<std::vector<TripleValue>> linear;  ///< [N][triple]
  std::vector<TripleValue> nonlinear;            ///< [triple]; empty when the surrogate is off
  double surrogate_z_max = 0.0;
  double surrogate_e_sup = 0.0;
};

double q_value(const paramlab::TripleMQR& t) {
  return t.q.is_infinite() ? std::numeric_limits<double>::infinity() : t.q.value();
}

/// ‖(Iu0, Iu1)‖_{Ḣ^1 × L²}: the size of D^{1-m}I applied to the data in Ḣ^m × Ḣ^{m-1}, for every m.
double transformed_data_norm(const spectral::WaveState& w, double N, double s, double p) {
  const auto e = diag::modified_energy(w, N, s, p, 1);
  return std::sqrt(2.0 * (e.gradient + e.kinetic));
}

StrichartzCell strichartz_cell(const ExperimentConfig& cfg, std::uint64_t seed) {
  const auto params = cfg.params();
  const auto w0 = roughdata::synthesize(cfg.recipe_for(seed), cfg.grid());
  StrichartzCell cell;

  // Linear flow, exact per mode at every sample time.
  std::vector<spectral::WaveState> traj;
  const auto samples = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.sample_interval));
  for (std::size_t j = 0; j <= samples; ++j)
    traj.push_back(dynamics::linear_propagate(w0, static_cast<double>(j) * cfg.sample_interval));
  for (double N : cfg.sweep_N) {
    const auto rep = diag::z_sup(traj, params, N, cfg.diag_oversample);
    const double data = transformed_data_norm(w0, N, cfg.s, cfg.p);
    std::vector<TripleValue> row;
    for (double z : rep.values) row.push_back({N, z, data, data > 0.0 ? z / data : 0.0, 0.0});
    cell.linear.push_back(std::move(row));
  }

  if (cfg.surrogate.enabled) {
    const auto& sg = cfg.surrogate;
    const auto w = diag::scale_to_modified_energy(w0, sg.energy, sg.N, cfg.s, cfg.p, cfg.energy_oversample);
    const auto triples = paramlab::proof_triples(params);
    std::vector<std::vector<double>> series(triples.size());
    double e_sup = 0.0;
    dynamics::evolve(w, sg.tau, cfg.stepper, {sg.sample_interval}, [&](const spectral::WaveState& x) {
      e_sup = std::max(e_sup, diag::modified_energy(x, sg.N, cfg.s, cfg.p, cfg.energy_oversample).total);
      for (std::size_t k = 0; k < triples.size(); ++k)
        series[k].push_back(diag::z_spatial_norm(x.u, triples[k], sg.N, cfg.s, cfg.diag_oversample));
    });
    const auto rep = diag::z_sup_from_series(triples, series, sg.sample_interval);
    for (double z : rep.values) cell.nonlinear.push_back({sg.N, z, 1.0, z, e_sup});
    cell.surrogate_z_max = rep.z_max;
    cell.surrogate_e_sup = e_sup;
  }
  return cell;
}

}  // namespace

ExperimentResult run_strichartz(const ExperimentConfig& cfg, int workers) {
  const auto params = cfg.params();
  const auto triples = paramlab::proof_triples(params);
  const auto cells = parallel_map<StrichartzCell>(cfg.seeds.size(), workers, [&](std::size_t i) {
    return with_context("strichartz", cfg.seeds[i], "", [&] { return strichartz_cell(cfg, cfg.seeds[i]); });
  });

  ExperimentResult res;
  res.schema = {"strichartz", 1,
                {"seed", "role", "mode", "N", "triple", "m", "q", "r", "z", "data_norm", "ratio", "e_sup"}};
  const std::size_t ncal = cfg.calibration_count();
  const std::size_t nt = triples.size();
  std::vector<std::vector<double>> cal(nt), held(nt);
  std::vector<double> zcal, zheld;
  bool energy_ok = true;
  double worst_e = 0.0;
  for (std::size_t si = 0; si < cells.size(); ++si) {
    const auto seed = static_cast<I64>(cfg.seeds[si]);
    const std::string role = role_of(cfg, si);
    for (const auto& row : cells[si].linear)
      for (std::size_t k = 0; k < nt; ++k) {
        const auto& v = row[k];
        const auto& t = triples[k];
        res.records.push_back({{seed, role, std::string("linear"), v.N, t.label, t.m, q_value(t), t.r, v.z, v.data_norm,
                                v.ratio, v.e_sup}});
        (si < ncal ? cal : held)[k].push_back(v.ratio);
      }
    for (std::size_t k = 0; k < cells[si].nonlinear.size(); ++k) {
      const auto& v = cells[si].nonlinear[k];
      const auto& t = triples[k];
      res.records.push_back({{seed, role, std::string("nonlinear"), v.N, t.label, t.m, q_value(t), t.r, v.z,
                              v.data_norm, v.ratio, v.e_sup}});
    }
    if (cfg.surrogate.enabled) {
      (si < ncal ? zcal : zheld).push_back(cells[si].surrogate_z_max);
      energy_ok = energy_ok && cells[si].surrogate_e_sup <= cfg.surrogate.energy_cap;
      worst_e = std::max(worst_e, cells[si].surrogate_e_sup);
    }
  }

  bool linear_ok = true;
  auto per_triple = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < nt; ++k) {
    const auto c = calibrate(cal[k], held[k], cfg.thresholds.headroom);
    linear_ok = linear_ok && c.passed && std::isfinite(c.constant);
    per_triple[triples[k].label] = {{"calibrated_constant", c.constant}, {"heldout_max", c.heldout_max}};
  }
  res.summary["N"] = cfg.sweep_N;
  res.summary["T"] = cfg.horizon;
  res.summary["linear"] = per_triple;
  res.assertions.push_back({"linear_ratio_bounded", linear_ok,
                            "every triple: held-out max <= " + fmt(cfg.thresholds.headroom) + " x calibrated constant"});
  if (cfg.surrogate.enabled) {
    const auto c = calibrate(zcal, zheld, cfg.thresholds.headroom);
    res.summary["surrogate"] = {{"tau", cfg.surrogate.tau},
                                {"N", cfg.surrogate.N},
                                {"initial_energy", cfg.surrogate.energy},
                                {"worst_e_sup", worst_e},
                                {"calibrated_z_max", c.constant},
                                {"heldout_z_max", c.heldout_max}};
    res.assertions.push_back({"surrogate_energy_le_cap", energy_ok,
                              "sup modified energy " + fmt(worst_e) + " <= " + fmt(cfg.surrogate.energy_cap)});
    res.assertions.push_back({"surrogate_z_bounded", c.passed && std::isfinite(c.constant),
                              "held-out z_max " + fmt(c.heldout_max) + " <= " + fmt(cfg.thresholds.headroom) + " x " +
                                  fmt(c.constant)});
  }
  return res;
}

}  // namespace imlab::harness
