// Command-line entry point for the experiments.
//
//   imlab <experiment> --config <path> [--out <dir>] [--seeds a,b,c] [--override key=value ...]
//   imlab params --p 4 --s 0.95 [--Cu 1] [--T 1] [--json]
//
// Exit codes: 0 all assertions pass, 1 assertion failure, 2 configuration
// error, 3 runtime error (blow-up, I/O). IMLAB_WORKERS sets the thread count.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "imlab/errors.hpp"
#include "imlab/harness/experiments.hpp"
#include "imlab/harness/parallel.hpp"

namespace {

enum Exit { kPass = 0, kAssertion = 1, kConfig = 2, kRuntime = 3 };

struct Options {
  std::string experiment;
  std::string config;
  std::string out;
  std::string seeds;
  std::vector<std::string> overrides;
  double p = 4.0, s = 0.95, C_u = 1.0, T = 1.0;
  bool json = false;
};

int print_params_table(const Options& o) {
  const auto table = imlab::paramlab::params_table(o.p, o.s, o.C_u, o.T);
  if (o.json)
    std::cout << imlab::harness::params_json(table).dump(2) << "\n";
  else
    std::cout << imlab::harness::params_text(table);
  return kPass;
}

int run(const Options& o) {
  using namespace imlab::harness;
  if (o.experiment == "params" && o.config.empty()) return print_params_table(o);
  if (o.config.empty()) throw imlab::ConfigError("--config is required for experiment '" + o.experiment + "'");

  Config cfg = Config::load(o.config);
  if (cfg.has("experiment") && cfg.get_string("experiment", "") != o.experiment)
    throw imlab::ConfigError("config is for experiment '" + cfg.get_string("experiment", "") + "', not '" +
                             o.experiment + "'");
  cfg.set("experiment", o.experiment);
  for (const auto& ov : o.overrides) cfg.set_override(ov);
  if (!o.seeds.empty()) cfg.set("seeds", o.seeds);
  const auto ec = load_experiment_config(cfg);
  const int workers = worker_count();

  const auto result = run_experiment(ec, workers);
  const auto out_dir = o.out.empty() ? ec.output_dir : std::filesystem::path(o.out);
  const auto paths = emit(result, ec.config_hash, ec.seeds, out_dir);

  for (const auto& a : result.assertions)
    std::printf("%s %s: %s\n", a.passed ? "PASS" : "FAIL", a.name.c_str(), a.detail.c_str());
  std::printf("wrote %s and %s (%.1f s, config %s)\n", paths.csv.c_str(), paths.summary.c_str(),
              result.wall_seconds, ec.config_hash.c_str());
  return result.all_passed() ? kPass : kAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"I-method numerical laboratory for the defocusing nonlinear wave equation"};
  Options o;
  app.add_option("experiment", o.experiment, "params | acl | lemma-a | lemma-b | growth | scaling | continuity | strichartz")
      ->required()
      ->check(CLI::IsMember(imlab::harness::experiment_names()));
  app.add_option("--config", o.config, "flat key=value config file");
  app.add_option("--out", o.out, "output directory (overrides output_dir)");
  app.add_option("--seeds", o.seeds, "seed list, e.g. 1,2,3 or 1:20");
  app.add_option("--override", o.overrides, "key=value applied after the config file")->allow_extra_args(false);
  app.add_option("--p", o.p, "params: nonlinearity exponent");
  app.add_option("--s", o.s, "params: data regularity");
  app.add_option("--Cu", o.C_u, "params: data size C(u)");
  app.add_option("--T", o.T, "params: time horizon");
  app.add_flag("--json", o.json, "params: print JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }

  try {
    return run(o);
  } catch (const imlab::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const imlab::PreconditionError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kRuntime;
  }
}
