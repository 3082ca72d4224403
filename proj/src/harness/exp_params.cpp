#include <cstdio>

#include "common.hpp"

namespace imlab::harness {

std::vector<std::pair<std::string, double>> params_rows(const paramlab::ParamsTable& t) {
  std::vector<std::pair<std::string, double>> rows{{"p", t.p}, {"s", t.s}, {"s_p", t.s_p}, {"s_0", t.s_0}};
  const auto lower = paramlab::threshold_lower_bounds(t.p);
  rows.emplace_back("s_0_lower_1", lower[0]);
  rows.emplace_back("s_0_lower_2", lower[1]);
  rows.emplace_back("s_0_lower_3", lower[2]);
  if (t.exponents) {
    rows.emplace_back("alpha", t.exponents->alpha);
    rows.emplace_back("beta", t.exponents->beta);
    rows.emplace_back("beta_composite_sp", t.exponents->sp_composite);
  }
  rows.emplace_back("C_u", t.C_u);
  rows.emplace_back("T", t.T);
  if (t.N) {
    rows.emplace_back("N", t.N->value);
    rows.emplace_back("log_N", t.N->log_value);
  }
  if (t.lambda) rows.emplace_back("lambda", *t.lambda);
  return rows;
}

nlohmann::ordered_json params_json(const paramlab::ParamsTable& t) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params_rows(t)) j[k] = v;
  j["theorem_applies"] = t.exponents.has_value();
  return j;
}

std::string params_text(const paramlab::ParamsTable& t) {
  std::string out;
  char buf[96];
  for (const auto& [k, v] : params_rows(t)) {
    std::snprintf(buf, sizeof buf, "%-18s %.12g\n", k.c_str(), v);
    out += buf;
  }
  if (!t.exponents) out += "s <= s_0(p): growth exponents and N are not defined\n";
  return out;
}

ExperimentResult run_params(const ExperimentConfig& cfg) {
  const auto grid = cfg.grid();
  const auto w = roughdata::synthesize(cfg.recipe_for(cfg.seeds.front()), grid);
  const double sp = paramlab::critical_regularity(cfg.p);
  const double C_u = paramlab::data_size_Cu(spectral::sobolev_norm(w.u, cfg.s),
                                            spectral::sobolev_norm(w.v, cfg.s - 1.0),
                                            spectral::sobolev_norm(w.u, sp), cfg.p);
  const auto table = paramlab::params_table(cfg.p, cfg.s, C_u, cfg.horizon);

  ExperimentResult res;
  res.schema = {"params", 1, {"quantity", "value"}};
  for (const auto& [k, v] : params_rows(table)) res.records.push_back({{k, v}});
  res.summary = params_json(table);
  res.assertions.push_back({"threshold_consistent",
                            (table.exponents.has_value()) == paramlab::threshold_inequality(cfg.s, cfg.p),
                            "growth exponents exist exactly when (5-p)/2 > (1-s)/(s-s_p)"});
  return res;
}

}  // namespace imlab::harness
